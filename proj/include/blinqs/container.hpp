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

#ifndef BLINQS_CONTAINER_HPP
#define BLINQS_CONTAINER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "blinqs/spiht.hpp"
#include "blinqs/wavelet.hpp"

namespace blinqs
{

   // .bqs layout (little-endian, see FORMAT.md):
   //
   //   "BQS1" | version u8 | width u32 | height u32 | levels u8 | cb_size u16
   //   | delta_max u8 | N_c u32
   //   | N_c x (band u8 | level u8 | flags u8 | N_p u8 | N_p x L_ip u32)
   //   | N_c x payload, each zero-padded to a byte boundary
   inline constexpr std::array<std::uint8_t, 4> stream_magic = {'B', 'Q', 'S', '1'};
   inline constexpr std::uint8_t stream_version = 1;
   inline constexpr std::size_t fixed_header_bytes = 21;

   enum BlockFlags : std::uint8_t
   {
       secondary_applied = 1u << 0,
       secondary_skipped = 1u << 1 // high-pass block too small for the secondary DWT
   };

   struct BlockRecord
   {
       BandKind band = BandKind::LL;
       std::uint8_t level = 0;
       std::uint8_t flags = 0;
       std::uint8_t planes = 0;
       std::vector<std::uint32_t> lengths; // one per plane

       std::uint64_t length() const;

       bool operator==(const BlockRecord&) const = default;
   };

   struct StreamHeader
   {
       std::uint8_t version = stream_version;
       std::uint32_t width = 0;
       std::uint32_t height = 0;
       std::uint8_t levels = 0;
       std::uint16_t cb_size = 0;
       std::uint8_t delta_max = 0;
       std::vector<BlockRecord> blocks;

       std::uint64_t pixels() const { return std::uint64_t(width) * height; }
       std::uint64_t payload_bits() const; // L
       std::vector<std::uint64_t> block_lengths() const;

       // Bytes taken by the header including the per-block markers.
       std::uint64_t header_bytes() const;

       bool operator==(const StreamHeader&) const = default;
   };

   BlockRecord make_record(const CodedBlock& cb, bool secondary_skipped);

   std::vector<std::uint8_t> serialize(const StreamHeader& header, std::span<const BitBuffer> payloads);

   struct ParsedStream
   {
       StreamHeader header;
       std::vector<std::uint64_t> offsets; // absolute byte offset of each block payload
       std::vector<std::uint64_t> sizes;   // byte length of each block payload
   };

   // Reads the header and computes payload offsets without touching payload
   // bits. Throws FormatError on a bad magic, a truncated header or a
   // payload size that disagrees with the recorded lengths.
   ParsedStream parse_header(std::span<const std::uint8_t> bytes);

   BitBuffer block_payload(std::span<const std::uint8_t> bytes, const ParsedStream& parsed, std::size_t block);

   // Cuts every block to keep_bits[i] bits and rewrites the plane lengths to
   // match. Blocks cut to zero keep their record, with zero lengths.
   std::vector<std::uint8_t> retruncate(std::span<const std::uint8_t> bytes, const ParsedStream& parsed,
                                        std::span<const std::uint64_t> keep_bits);

}

#endif
