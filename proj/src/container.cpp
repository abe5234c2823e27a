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

#include "blinqs/container.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace blinqs
{

   namespace
   {
       class ByteWriter
       {
       public:
           void u8(std::uint8_t v) { _out.push_back(v); }

           void u16(std::uint16_t v)
           {
               u8(std::uint8_t(v));
               u8(std::uint8_t(v >> 8));
           }

           void u32(std::uint32_t v)
           {
               for (int s = 0; s < 32; s += 8)
                   u8(std::uint8_t(v >> s));
           }

           void bytes(std::span<const std::uint8_t> b) { _out.insert(_out.end(), b.begin(), b.end()); }

           std::vector<std::uint8_t> take() { return std::move(_out); }

       private:
           std::vector<std::uint8_t> _out;
       };

       class ByteReader
       {
       public:
           explicit ByteReader(std::span<const std::uint8_t> in) : _in(in) {}

           std::uint8_t u8()
           {
               need(1);
               return _in[_pos++];
           }

           std::uint16_t u16()
           {
               need(2);
               const std::uint16_t v = std::uint16_t(_in[_pos] | (_in[_pos + 1] << 8));
               _pos += 2;
               return v;
           }

           std::uint32_t u32()
           {
               need(4);
               std::uint32_t v = 0;

               for (int i = 0; i < 4; ++i)
                   v |= std::uint32_t(_in[_pos + i]) << (8 * i);

               _pos += 4;
               return v;
           }

           std::size_t position() const { return _pos; }
           std::size_t remaining() const { return _in.size() - _pos; }

       private:
           void need(std::size_t n) const
           {
               if (_in.size() - _pos < n)
                   throw FormatError(FormatError::Kind::truncated_header,
                                     "stream header truncated at byte " + std::to_string(_pos));
           }

           std::span<const std::uint8_t> _in;
           std::size_t _pos = 0;
       };

       void write_header(ByteWriter& w, const StreamHeader& h)
       {
           w.bytes(stream_magic);
           w.u8(h.version);
           w.u32(h.width);
           w.u32(h.height);
           w.u8(h.levels);
           w.u16(h.cb_size);
           w.u8(h.delta_max);
           w.u32(std::uint32_t(h.blocks.size()));

           for (const auto& b : h.blocks)
           {
               if (b.lengths.size() != b.planes)
                   throw ArgumentError("block record plane count does not match its length list");

               w.u8(std::uint8_t(b.band));
               w.u8(b.level);
               w.u8(b.flags);
               w.u8(b.planes);

               for (auto len : b.lengths)
                   w.u32(len);
           }
       }
   }

   std::uint64_t BlockRecord::length() const
   {
       return std::accumulate(lengths.begin(), lengths.end(), std::uint64_t(0));
   }

   std::uint64_t StreamHeader::payload_bits() const
   {
       std::uint64_t total = 0;

       for (const auto& b : blocks)
           total += b.length();

       return total;
   }

   std::vector<std::uint64_t> StreamHeader::block_lengths() const
   {
       std::vector<std::uint64_t> out;
       out.reserve(blocks.size());

       for (const auto& b : blocks)
           out.push_back(b.length());

       return out;
   }

   std::uint64_t StreamHeader::header_bytes() const
   {
       std::uint64_t n = fixed_header_bytes;

       for (const auto& b : blocks)
           n += 4 + 4 * std::uint64_t(b.planes);

       return n;
   }

   BlockRecord make_record(const CodedBlock& cb, bool secondary_skipped)
   {
       BlockRecord r;
       r.band = cb.band;
       r.level = std::uint8_t(cb.level);
       r.flags = std::uint8_t((cb.secondary ? BlockFlags::secondary_applied : 0) |
                              (secondary_skipped ? BlockFlags::secondary_skipped : 0));
       r.planes = std::uint8_t(cb.planes);
       r.lengths = cb.plane_lengths;
       return r;
   }

   std::vector<std::uint8_t> serialize(const StreamHeader& header, std::span<const BitBuffer> payloads)
   {
       if (payloads.size() != header.blocks.size())
           throw ArgumentError("serialize: " + std::to_string(payloads.size()) + " payloads for " +
                               std::to_string(header.blocks.size()) + " block records");

       ByteWriter w;
       write_header(w, header);

       for (std::size_t i = 0; i < payloads.size(); ++i)
       {
           if (payloads[i].bits() != header.blocks[i].length())
               throw ArgumentError("serialize: payload of block " + std::to_string(i) +
                                   " disagrees with its plane lengths");

           w.bytes(payloads[i].bytes());
       }

       return w.take();
   }

   ParsedStream parse_header(std::span<const std::uint8_t> bytes)
   {
       if (bytes.size() < stream_magic.size() || !std::equal(stream_magic.begin(), stream_magic.end(), bytes.begin()))
           throw FormatError(FormatError::Kind::bad_magic, "not a BlinQS stream");

       ByteReader r(bytes.subspan(stream_magic.size()));
       ParsedStream out;
       auto& h = out.header;

       h.version = r.u8();

       if (h.version != stream_version)
           throw FormatError(FormatError::Kind::unsupported_version,
                             "unsupported stream version " + std::to_string(h.version));

       h.width = r.u32();
       h.height = r.u32();
       h.levels = r.u8();
       h.cb_size = r.u16();
       h.delta_max = r.u8();
       const std::uint32_t count = r.u32();

       // Every record takes at least 4 bytes; reject absurd counts before
       // allocating for them.
       if (std::uint64_t(count) * 4 > r.remaining())
           throw FormatError(FormatError::Kind::truncated_header,
                             "header declares " + std::to_string(count) + " blocks but is too short to hold them");

       h.blocks.resize(count);

       for (auto& b : h.blocks)
       {
           const auto band = r.u8();

           if (band > 3)
               throw FormatError(FormatError::Kind::geometry_mismatch, "invalid band id " + std::to_string(band));

           b.band = BandKind(band);
           b.level = r.u8();
           b.flags = r.u8();
           b.planes = r.u8();
           b.lengths.resize(b.planes);

           for (auto& len : b.lengths)
               len = r.u32();
       }

       std::uint64_t offset = stream_magic.size() + r.position();
       out.offsets.reserve(count);
       out.sizes.reserve(count);

       for (const auto& b : h.blocks)
       {
           const auto size = (b.length() + 7) / 8;
           out.offsets.push_back(offset);
           out.sizes.push_back(size);
           offset += size;
       }

       if (offset != bytes.size())
           throw FormatError(FormatError::Kind::length_mismatch,
                             "payload is " + std::to_string(bytes.size()) + " bytes but the header implies " +
                                 std::to_string(offset));

       return out;
   }

   BitBuffer block_payload(std::span<const std::uint8_t> bytes, const ParsedStream& parsed, std::size_t block)
   {
       const auto off = parsed.offsets.at(block), size = parsed.sizes.at(block);
       auto first = bytes.begin() + std::ptrdiff_t(off);
       return {std::vector<std::uint8_t>(first, first + std::ptrdiff_t(size)), parsed.header.blocks[block].length()};
   }

   std::vector<std::uint8_t> retruncate(std::span<const std::uint8_t> bytes, const ParsedStream& parsed,
                                        std::span<const std::uint64_t> keep_bits)
   {
       const auto& in = parsed.header;

       if (keep_bits.size() != in.blocks.size())
           throw ArgumentError("truncation plan covers " + std::to_string(keep_bits.size()) + " blocks, stream has " +
                               std::to_string(in.blocks.size()));

       StreamHeader out = in;
       std::vector<BitBuffer> payloads;
       payloads.reserve(in.blocks.size());

       for (std::size_t i = 0; i < in.blocks.size(); ++i)
       {
           const auto n = keep_bits[i];

           if (n > in.blocks[i].length())
               throw ArgumentError("truncation point " + std::to_string(n) + " exceeds block " + std::to_string(i) +
                                   " length " + std::to_string(in.blocks[i].length()));

           std::uint64_t left = n;

           for (auto& len : out.blocks[i].lengths)
           {
               len = std::uint32_t(std::min<std::uint64_t>(len, left));
               left -= len;
           }

           payloads.push_back(block_payload(bytes, parsed, i).prefix(n));
       }

       return serialize(out, payloads);
   }

}
