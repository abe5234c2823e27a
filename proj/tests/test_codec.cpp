/*
Copyright 2026 The BlinQS Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <gtest/gtest.h>

#include <sstream>

#include "blinqs/codec.hpp"
#include "blinqs/metrics.hpp"
#include "blinqs/report.hpp"
#include "synthetic.hpp"

using namespace blinqs;
using blinqs::fixture::synthetic_image;

TEST(Codec, EncodeIsDeterministicAndExecIndependent)
{
   const auto img = synthetic_image(96, 80);
   const auto a = encode_image(img, {3, 16, 4, Exec::parallel});
   const auto b = encode_image(img, {3, 16, 4, Exec::parallel});
   const auto c = encode_image(img, {3, 16, 4, Exec::serial});
   EXPECT_EQ(a.stream, b.stream);
   EXPECT_EQ(a.stream, c.stream);

   EXPECT_EQ(decode_image_stream(a.stream, {Exec::serial}), decode_image_stream(a.stream, {Exec::parallel}));
}

TEST(Codec, FullStreamQualityIsBoundedByQuantisation)
{
   const auto img = synthetic_image(128, 128);
   const auto enc = encode_image(img, {3, 32, 2, Exec::parallel});
   const auto rec = decode_image_stream(enc.stream);
   EXPECT_GT(psnr(img, rec), 40.0);

   // Tiny blocks, odd sizes, deeper pyramid.
   const auto odd = synthetic_image(75, 53);
   const auto enc2 = encode_image(odd, {4, 8, 5, Exec::parallel});
   EXPECT_GT(psnr(odd, decode_image_stream(enc2.stream)), 35.0);
}

TEST(Codec, ConstantMidGreyIsNearlyFree)
{
   const Image grey(64, 64, 127);
   const auto enc = encode_image(grey);
   EXPECT_EQ(enc.header.payload_bits(), 0u);
   EXPECT_EQ(decode_image_stream(enc.stream), grey);
}

TEST(Codec, HeaderOnlyStreamDecodesToMidGrey)
{
   const auto img = synthetic_image(64, 48);
   const auto enc = encode_image(img, {2, 16, 4, Exec::parallel});
   const std::vector<std::uint64_t> none(enc.blocks.size(), 0);
   const auto empty = retruncate(enc.stream, parse_header(enc.stream), none);
   EXPECT_EQ(decode_image_stream(empty), Image(64, 48, 127));
}

TEST(Codec, CodeBlockCountForStandardGeometry)
{
   const auto enc = encode_image(synthetic_image(512, 512));
   EXPECT_EQ(enc.header.blocks.size(), 256u);
}

TEST(Codec, DecoderRejectsInconsistentGeometry)
{
   const auto enc = encode_image(synthetic_image(64, 64), {2, 16, 4, Exec::parallel});

   auto expect_geometry = [](const StreamHeader& h, const std::vector<BitBuffer>& p) {
       try
       {
           decode_image_stream(serialize(h, p));
           ADD_FAILURE() << "accepted";
       }
       catch (const FormatError& e)
       {
           EXPECT_EQ(e.kind(), FormatError::Kind::geometry_mismatch);
       }
   };

   std::vector<BitBuffer> payloads;

   for (const auto& b : enc.blocks)
       payloads.push_back(b.payload);

   auto h = enc.header;
   h.width = 65;
   expect_geometry(h, payloads);

   h = enc.header;
   h.levels = 7;
   expect_geometry(h, payloads);

   h = enc.header;
   h.cb_size = 24;
   expect_geometry(h, payloads);

   h = enc.header;
   h.blocks[0].band = BandKind::HH;
   expect_geometry(h, payloads);

   h = enc.header;
   h.blocks[5].flags ^= secondary_applied;
   expect_geometry(h, payloads);
}

TEST(Codec, PcrdTruncationRespectsBudget)
{
   const auto img = synthetic_image(128, 96);
   const auto enc = encode_image(img, {3, 16, 4, Exec::parallel});
   const auto hulls = rd_hulls(enc);
   double prev = 0.0;

   for (double r : standard_rates)
   {
       LagrangeSelection sel;
       const auto out = pcrd_truncate(enc, hulls, r, &sel);
       EXPECT_LE(payload_bits(out), std::uint64_t(r * 128 * 96));
       EXPECT_EQ(payload_bits(out), sel.rate);

       const double q = psnr(img, decode_image_stream(out));
       EXPECT_GE(q, prev - 1e-9) << r;
       prev = q;
   }

   EXPECT_EQ(rd_hulls(enc, Exec::serial), hulls);
}

TEST(Codec, BlindTranscodeRespectsBudgetAndDecodes)
{
   const auto img = synthetic_image(128, 96);
   const auto enc = encode_image(img, {3, 16, 4, Exec::parallel});

   for (double r : {0.01, 0.05, 0.0625, 0.3, 0.45, 1.0, 2.0, 8.0})
   {
       const auto out = transcode(enc.stream, r);
       EXPECT_LE(payload_bits(out), std::uint64_t(r * 128 * 96)) << r;
       const auto rec = decode_image_stream(out);
       EXPECT_EQ(rec.width, 128u);
   }

   // Above every standard rate the stream passes through untouched.
   EXPECT_EQ(transcode(enc.stream, 1000.0), enc.stream);
}

TEST(Report, CsvLayoutAndOrdering)
{
   std::vector<RateReport> rows = {
       {"b", RateMode::pcrd, 0.5, 0.49, 0.6, 30.0, 0.9, 12.5},
       {"a", RateMode::pcrd, 0.25, 0.2, 0.3, psnr_identical, 1.0, 3.0},
       {"a", RateMode::blinqs, 0.5, 0.4, 0.5, 28.123456, 0.8, 1.0},
       {"a", RateMode::blinqs, 0.125, 0.1, 0.2, 20.0, 0.5, 1.0},
   };

   std::ostringstream out;
   write_csv(out, rows, false);
   EXPECT_EQ(out.str(), "image,mode,target_bpp,payload_bpp,total_bpp,psnr_db,ssim,ms\n"
                        "a,blinqs,0.125000,0.100000,0.200000,20.0000,0.500000,0.000\n"
                        "a,blinqs,0.500000,0.400000,0.500000,28.1235,0.800000,0.000\n"
                        "a,pcrd,0.250000,0.200000,0.300000,inf,1.000000,0.000\n"
                        "b,pcrd,0.500000,0.490000,0.600000,30.0000,0.900000,0.000\n");

   std::ostringstream empty;
   write_csv(empty, {});
   EXPECT_EQ(empty.str(), "image,mode,target_bpp,payload_bpp,total_bpp,psnr_db,ssim,ms\n");
}

TEST(Report, CurvesAndCompare)
{
   const auto img = synthetic_image(96, 96);
   CurveOptions opts;
   opts.encode = {3, 16, 4, Exec::parallel};

   EXPECT_TRUE(rd_curve(img, "x", {}, RateMode::blinqs, opts).empty());

   const std::vector<double> rates = {0.25, 1.0};
   const auto rows = compare_modes(img, "x", rates, opts);
   ASSERT_EQ(rows.size(), 4u);

   for (const auto& r : rows)
   {
       EXPECT_LE(r.payload_bpp, r.target_bpp);
       EXPECT_GE(r.total_bpp, r.payload_bpp);
   }

   // Header and markers for 43 blocks cost well over 0.25 bpp here.
   opts.rate_includes_header = true;
   const std::vector<double> high = {2.0, 4.0};

   for (const auto& r : rd_curve(img, "x", high, RateMode::blinqs, opts))
       EXPECT_LE(r.total_bpp, r.target_bpp + 1e-12);

   EXPECT_EQ(parse_mode("pcrd"), RateMode::pcrd);
   EXPECT_THROW(parse_mode("j2k"), ArgumentError);
}
