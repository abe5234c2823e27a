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

#include "blinqs/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "blinqs/metrics.hpp"

namespace blinqs
{

   namespace
   {
       std::string format_number(double v, int precision)
       {
           if (std::isinf(v))
               return v > 0 ? "inf" : "-inf";

           char buf[64];
           std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
           return buf;
       }

       std::vector<RateReport> sweep(const EncodedImage& enc, const Image& img, const std::string& name,
                                     std::span<const double> rates, RateMode mode, const CurveOptions& opts,
                                     std::span<const RDCurve> hulls)
       {
           std::vector<RateReport> rows;
           const double pixels = double(enc.header.pixels());

           for (double rate : rates)
           {
               const auto t0 = std::chrono::steady_clock::now();
               const auto stream = truncate_to_rate(enc, rate, mode, opts, hulls);
               const Image rec = decode_image_stream(stream, {opts.encode.exec});
               const auto t1 = std::chrono::steady_clock::now();

               RateReport r;
               r.image = name;
               r.mode = mode;
               r.target_bpp = rate;
               r.payload_bpp = double(payload_bits(stream)) / pixels;
               r.total_bpp = 8.0 * double(stream.size()) / pixels;
               r.psnr_db = psnr(img, rec);
               r.ssim = ssim(img, rec);
               r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
               rows.push_back(std::move(r));
           }

           return rows;
       }
   }

   const char* mode_name(RateMode mode) { return mode == RateMode::pcrd ? "pcrd" : "blinqs"; }

   RateMode parse_mode(const std::string& name)
   {
       if (name == "blinqs")
           return RateMode::blinqs;

       if (name == "pcrd")
           return RateMode::pcrd;

       throw ArgumentError("unknown mode '" + name + "' (expected blinqs or pcrd)");
   }

   double payload_target_bpp(const StreamHeader& header, double target_bpp, bool rate_includes_header)
   {
       if (!rate_includes_header)
           return target_bpp;

       // Worst case padding is 7 bits per block.
       const double overhead = 8.0 * double(header.header_bytes()) + 7.0 * double(header.blocks.size());
       return std::max(0.0, (target_bpp * double(header.pixels()) - overhead) / double(header.pixels()));
   }

   std::vector<std::uint8_t> truncate_to_rate(const EncodedImage& enc, double target_bpp, RateMode mode,
                                              const CurveOptions& opts, std::span<const RDCurve> hulls)
   {
       const double bpp = payload_target_bpp(enc.header, target_bpp, opts.rate_includes_header);

       if (std::floor(bpp * double(enc.header.pixels())) < 1.0)
       {
           const std::vector<std::uint64_t> none(enc.blocks.size(), 0);
           return retruncate(enc.stream, parse_header(enc.stream), none);
       }

       if (mode == RateMode::blinqs)
           return transcode(enc.stream, bpp, opts.transcode);

       if (hulls.empty())
       {
           const auto own = rd_hulls(enc, opts.encode.exec);
           return pcrd_truncate(enc, own, bpp);
       }

       return pcrd_truncate(enc, hulls, bpp);
   }

   std::vector<RateReport> rd_curve(const Image& img, const std::string& name, std::span<const double> rates,
                                    RateMode mode, const CurveOptions& opts)
   {
       if (rates.empty())
           return {};

       const EncodedImage enc = encode_image(img, opts.encode);
       std::vector<RDCurve> hulls;

       if (mode == RateMode::pcrd)
           hulls = rd_hulls(enc, opts.encode.exec);

       return sweep(enc, img, name, rates, mode, opts, hulls);
   }

   std::vector<RateReport> compare_modes(const Image& img, const std::string& name, std::span<const double> rates,
                                         const CurveOptions& opts)
   {
       if (rates.empty())
           return {};

       const EncodedImage enc = encode_image(img, opts.encode);
       const auto hulls = rd_hulls(enc, opts.encode.exec);

       auto rows = sweep(enc, img, name, rates, RateMode::blinqs, opts, {});
       auto pcrd = sweep(enc, img, name, rates, RateMode::pcrd, opts, hulls);
       rows.insert(rows.end(), pcrd.begin(), pcrd.end());
       return rows;
   }

   void write_csv(std::ostream& out, std::vector<RateReport> rows, bool timing)
   {
       std::stable_sort(rows.begin(), rows.end(), [](const RateReport& a, const RateReport& b) {
           return std::tuple(a.image, int(a.mode), a.target_bpp) < std::tuple(b.image, int(b.mode), b.target_bpp);
       });

       out << "image,mode,target_bpp,payload_bpp,total_bpp,psnr_db,ssim,ms\n";

       for (const auto& r : rows)
       {
           out << r.image << ',' << mode_name(r.mode) << ',' << format_number(r.target_bpp, 6) << ','
               << format_number(r.payload_bpp, 6) << ',' << format_number(r.total_bpp, 6) << ','
               << format_number(r.psnr_db, 4) << ',' << format_number(r.ssim, 6) << ','
               << format_number(timing ? r.ms : 0.0, 3) << '\n';
       }
   }

}
