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

#ifndef BLINQS_CODEC_HPP
#define BLINQS_CODEC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "blinqs/container.hpp"
#include "blinqs/image.hpp"
#include "blinqs/pcrd.hpp"
#include "blinqs/quantizer.hpp"

namespace blinqs
{

   struct EncodeParams
   {
       int levels = 3;
       int cb_size = 32;
       int delta_max = 4;
       Exec exec = Exec::parallel;
   };

   // Everything the encoder knows; the stream is what leaves it.
   struct EncodedImage
   {
       StreamHeader header;
       std::vector<CodedBlock> blocks;
       std::vector<RealGrid> originals; // band-domain coefficients per block
       std::vector<int> deltas;
       std::vector<double> weights; // band synthesis gain per block
       std::vector<std::uint8_t> stream;
   };

   EncodedImage encode_image(const Image& img, const EncodeParams& params = {});

   struct DecodeParams
   {
       Exec exec = Exec::parallel;
       Dequantization dequantization = Dequantization::midpoint;
   };

   // Rebuilds the image from whatever prefix of each block the stream holds.
   Image decode_image_stream(std::span<const std::uint8_t> stream, const DecodeParams& params = {});

   // Convex hulls of every block's plane-boundary RD points.
   std::vector<RDCurve> rd_hulls(const EncodedImage& enc, Exec exec = Exec::parallel);

   // Lagrangian truncation of the full stream to floor(bpp * pixels) payload bits.
   std::vector<std::uint8_t> pcrd_truncate(const EncodedImage& enc, std::span<const RDCurve> hulls, double bpp,
                                           LagrangeSelection* selection = nullptr);

   // Payload bits actually carried by a stream.
   std::uint64_t payload_bits(std::span<const std::uint8_t> stream);

}

#endif
