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

#ifndef BLINQS_SPIHT_HPP
#define BLINQS_SPIHT_HPP

#include <cstdint>
#include <vector>

#include "blinqs/grid.hpp"
#include "blinqs/wavelet.hpp"

namespace blinqs
{

   // MSB-first bit string.
   class BitBuffer
   {
   public:
       BitBuffer() = default;
       BitBuffer(std::vector<std::uint8_t> bytes, std::uint64_t bits);

       void push(bool bit)
       {
           if ((_bits & 7) == 0)
               _bytes.push_back(0);

           if (bit)
               _bytes.back() |= std::uint8_t(0x80u >> (_bits & 7));

           ++_bits;
       }

       bool get(std::uint64_t i) const { return (_bytes[i >> 3] >> (7 - (i & 7))) & 1u; }

       std::uint64_t bits() const { return _bits; }
       const std::vector<std::uint8_t>& bytes() const { return _bytes; }

       // First n bits, with the unused tail of the last byte cleared.
       BitBuffer prefix(std::uint64_t n) const;

       bool operator==(const BitBuffer&) const = default;

   private:
       std::vector<std::uint8_t> _bytes;
       std::uint64_t _bits = 0;
   };

   // How the spatial-orientation trees are laid over a block.
   enum class TreeLayout
   {
       // Every coefficient is a root; a plain bit-plane significance scan.
       flat,
       // Block carries a one-level secondary DWT: roots are the LL quadrant,
       // grouped 2x2 with the top-left pixel childless and the other three
       // parenting a 2x2 group in the HL, LH and HH quadrants.
       quadrant
   };

   struct CodedBlock
   {
       std::uint32_t id = 0;
       BandKind band = BandKind::LL;
       int level = 0;
       bool secondary = false;
       std::size_t rows = 0;
       std::size_t cols = 0;
       int planes = 0;                           // N_p
       std::vector<std::uint32_t> plane_lengths; // L_ip, most significant plane first
       BitBuffer payload;

       TreeLayout layout() const { return secondary ? TreeLayout::quadrant : TreeLayout::flat; }

       std::uint64_t length() const { return payload.bits(); } // L_i
   };

   CodedBlock encode_block(const IntGrid& qblock, TreeLayout layout);

   struct DecodedBlock
   {
       // Magnitude bits received so far, with sign. No reconstruction
       // offset is applied; see dequantize() for that.
       IntGrid values;
       // Count of magnitude bits still unknown for each significant entry.
       Grid<std::uint8_t> unresolved;
       std::uint64_t bits_used = 0;
       bool clamped = false; // n_bits exceeded the payload
   };

   DecodedBlock decode_block(const CodedBlock& cb, std::uint64_t n_bits);

   // Snapshot of the coder lists, exposed for lockstep testing.
   struct SpihtState
   {
       enum class SetType : std::uint8_t
       {
           A,
           B
       };

       struct SetEntry
       {
           std::uint32_t pixel;
           SetType type;

           bool operator==(const SetEntry&) const = default;
       };

       std::vector<std::uint32_t> lip;
       std::vector<SetEntry> lis;
       std::vector<std::uint32_t> lsp;
       int plane = -1; // current threshold is 2^plane
       bool at_plane_boundary = false;

       bool operator==(const SpihtState&) const = default;
   };

   SpihtState encoder_state_after(const IntGrid& qblock, TreeLayout layout, std::uint64_t n_bits);
   SpihtState decoder_state_after(const CodedBlock& cb, std::uint64_t n_bits);

}

#endif
