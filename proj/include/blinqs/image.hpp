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

#ifndef BLINQS_IMAGE_HPP
#define BLINQS_IMAGE_HPP

#include <cstdint>
#include <vector>

#include "blinqs/error.hpp"

namespace blinqs
{

   // 8-bit grayscale raster, row-major.
   struct Image
   {
       std::uint32_t width = 0;
       std::uint32_t height = 0;
       std::vector<std::uint8_t> samples;

       Image() = default;

       Image(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0)
           : width(w), height(h), samples(std::size_t(w) * h, fill)
       {
           if (w == 0 || h == 0)
               throw ArgumentError("image dimensions must be positive");
       }

       std::uint64_t pixels() const { return std::uint64_t(width) * height; }

       std::uint8_t& at(std::uint32_t x, std::uint32_t y) { return samples[std::size_t(y) * width + x]; }
       std::uint8_t at(std::uint32_t x, std::uint32_t y) const { return samples[std::size_t(y) * width + x]; }

       bool operator==(const Image&) const = default;
   };

}

#endif
