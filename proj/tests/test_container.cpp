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

#include <random>

#include "blinqs/container.hpp"

using namespace blinqs;

namespace
{
   BitBuffer random_bits(std::mt19937& rng, std::uint64_t n)
   {
       BitBuffer b;

       for (std::uint64_t i = 0; i < n; ++i)
           b.push(rng() & 1u);

       return b;
   }

   struct Sample
   {
       StreamHeader header;
       std::vector<BitBuffer> payloads;
   };

   Sample random_stream(std::mt19937& rng)
   {
       std::uniform_int_distribution<int> count(0, 12), planes(0, 6), plane_len(0, 90), small(0, 255);
       Sample s;
       s.header.width = std::uint32_t(1 + rng() % 4096);
       s.header.height = std::uint32_t(1 + rng() % 4096);
       s.header.levels = std::uint8_t(1 + rng() % 8);
       s.header.cb_size = std::uint16_t(8u << (rng() % 4));
       s.header.delta_max = std::uint8_t(2 + rng() % 10);

       for (int i = count(rng); i > 0; --i)
       {
           BlockRecord r;
           r.band = BandKind(rng() % 4);
           r.level = std::uint8_t(small(rng));
           r.flags = std::uint8_t(rng() % 4);
           r.planes = std::uint8_t(planes(rng));

           for (int p = 0; p < r.planes; ++p)
               r.lengths.push_back(std::uint32_t(plane_len(rng)));

           s.payloads.push_back(random_bits(rng, r.length()));
           s.header.blocks.push_back(std::move(r));
       }

       return s;
   }

   std::vector<std::uint8_t> example_stream()
   {
       StreamHeader h;
       h.width = 16;
       h.height = 8;
       h.levels = 1;
       h.cb_size = 8;
       h.delta_max = 4;
       h.blocks.push_back({BandKind::LL, 1, 0, 3, {5, 9, 2}});
       h.blocks.push_back({BandKind::HL, 1, secondary_applied, 1, {11}});

       std::mt19937 rng(9);
       const std::vector<BitBuffer> p = {random_bits(rng, 16), random_bits(rng, 11)};
       return serialize(h, p);
   }
}

TEST(Container, EmptyStreamIsTheFixedPrefix)
{
   StreamHeader h;
   h.width = 3;
   h.height = 2;
   h.levels = 1;
   h.cb_size = 8;
   h.delta_max = 4;

   const auto bytes = serialize(h, {});
   ASSERT_EQ(bytes.size(), fixed_header_bytes);
   EXPECT_EQ(bytes, (std::vector<std::uint8_t>{'B', 'Q', 'S', '1', 1, 3, 0, 0, 0, 2, 0, 0, 0, 1, 8, 0, 4, 0, 0, 0, 0}));
   EXPECT_EQ(h.header_bytes(), fixed_header_bytes);
   EXPECT_EQ(parse_header(bytes).header, h);
}

TEST(Container, MarkerAndPayloadArithmetic)
{
   const auto bytes = example_stream();
   const auto parsed = parse_header(bytes);

   // Record: 4 bytes plus 3 u32 lengths; 16 bits of payload is 2 bytes.
   EXPECT_EQ(parsed.offsets[0], fixed_header_bytes + (4 + 12) + (4 + 4));
   EXPECT_EQ(parsed.sizes[0], 2u);
   EXPECT_EQ(parsed.offsets[1], parsed.offsets[0] + 2);
   EXPECT_EQ(parsed.sizes[1], 2u);
   EXPECT_EQ(parsed.offsets.back() + parsed.sizes.back(), bytes.size());
   EXPECT_EQ(parsed.header.payload_bits(), 27u);
   EXPECT_EQ(parsed.header.header_bytes(), parsed.offsets[0]);

   // Second L_ip of the first record, little-endian.
   EXPECT_EQ(bytes[fixed_header_bytes + 8], 9);
   EXPECT_EQ(bytes[fixed_header_bytes + 9], 0);
}

TEST(Container, RandomisedRoundTrip)
{
   std::mt19937 rng(21);

   for (int trial = 0; trial < 1000; ++trial)
   {
       const auto s = random_stream(rng);
       const auto bytes = serialize(s.header, s.payloads);
       const auto parsed = parse_header(bytes);
       ASSERT_EQ(parsed.header, s.header);

       for (std::size_t i = 0; i < s.payloads.size(); ++i)
       {
           ASSERT_EQ(block_payload(bytes, parsed, i), s.payloads[i]);

           if (i > 0)
           {
               ASSERT_GE(parsed.offsets[i], parsed.offsets[i - 1]);
           }
       }

       ASSERT_EQ(serialize(parsed.header, s.payloads), bytes);
   }
}

TEST(Container, DistinctErrorsForCorruption)
{
   const auto good = example_stream();

   auto kind_of = [](std::vector<std::uint8_t> bytes) {
       try
       {
           parse_header(bytes);
       }
       catch (const FormatError& e)
       {
           return int(e.kind());
       }

       return -1;
   };

   auto bad_magic = good;
   bad_magic[0] = 'X';
   EXPECT_EQ(kind_of(bad_magic), int(FormatError::Kind::bad_magic));
   EXPECT_EQ(kind_of({'B', 'Q'}), int(FormatError::Kind::bad_magic));

   auto version = good;
   version[4] = 7;
   EXPECT_EQ(kind_of(version), int(FormatError::Kind::unsupported_version));

   EXPECT_EQ(kind_of(std::vector<std::uint8_t>(good.begin(), good.begin() + 30)),
             int(FormatError::Kind::truncated_header));

   // Claim one more block than the records present.
   auto extra = good;
   extra[17] = 8;
   EXPECT_EQ(kind_of(extra), int(FormatError::Kind::truncated_header));

   auto longer = good;
   longer.push_back(0);
   EXPECT_EQ(kind_of(longer), int(FormatError::Kind::length_mismatch));

   auto shorter = good;
   shorter.pop_back();
   EXPECT_EQ(kind_of(shorter), int(FormatError::Kind::length_mismatch));

   auto band = good;
   band[fixed_header_bytes] = 9;
   EXPECT_EQ(kind_of(band), int(FormatError::Kind::geometry_mismatch));
}

TEST(Container, SerializeRejectsMismatchedPayloads)
{
   StreamHeader h;
   h.blocks.push_back({BandKind::LL, 1, 0, 1, {4}});
   EXPECT_THROW(serialize(h, {}), ArgumentError);

   const std::vector<BitBuffer> wrong = {BitBuffer({0xF0}, 5)};
   EXPECT_THROW(serialize(h, wrong), ArgumentError);
}

TEST(Container, RetruncateIdentityAndExclusion)
{
   const auto bytes = example_stream();
   const auto parsed = parse_header(bytes);

   const std::vector<std::uint64_t> full = {16, 11};
   EXPECT_EQ(retruncate(bytes, parsed, full), bytes);

   const std::vector<std::uint64_t> none = {0, 0};
   const auto empty = retruncate(bytes, parsed, none);
   const auto reparsed = parse_header(empty);
   EXPECT_EQ(reparsed.header.payload_bits(), 0u);
   EXPECT_EQ(reparsed.header.blocks.size(), 2u);
   EXPECT_EQ(reparsed.header.blocks[0].lengths, (std::vector<std::uint32_t>{0, 0, 0}));
   EXPECT_EQ(empty.size(), parsed.header.header_bytes());
}

TEST(Container, RetruncateRewritesPlaneLengths)
{
   const auto bytes = example_stream();
   const auto parsed = parse_header(bytes);

   const std::vector<std::uint64_t> half = {8, 11};
   const auto out = retruncate(bytes, parsed, half);
   const auto reparsed = parse_header(out);
   EXPECT_EQ(reparsed.header.blocks[0].lengths, (std::vector<std::uint32_t>{5, 3, 0}));
   EXPECT_EQ(reparsed.header.blocks[0].length(), 8u);
   EXPECT_EQ(block_payload(out, reparsed, 0), block_payload(bytes, parsed, 0).prefix(8));
   EXPECT_EQ(block_payload(out, reparsed, 1), block_payload(bytes, parsed, 1));

   // Retruncating again is stable.
   EXPECT_EQ(retruncate(out, reparsed, half), out);

   const std::vector<std::uint64_t> over = {17, 0};
   EXPECT_THROW(retruncate(bytes, parsed, over), ArgumentError);
   const std::vector<std::uint64_t> short_plan = {1};
   EXPECT_THROW(retruncate(bytes, parsed, short_plan), ArgumentError);
}
