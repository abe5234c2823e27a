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

#ifndef BLINQS_IMAGE_IO_HPP
#define BLINQS_IMAGE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "blinqs/image.hpp"

namespace blinqs
{

   // Binary PGM (P5, maxval 255) and uncompressed 8-bit grayscale BMP.
   // Anything else is rejected with FormatError.
   Image decode_image(std::span<const std::uint8_t> bytes);
   Image read_image(const std::filesystem::path& path);

   std::vector<std::uint8_t> encode_pgm(const Image& img);
   std::vector<std::uint8_t> encode_bmp(const Image& img);

   // Format chosen by extension (.bmp, otherwise PGM).
   void write_image(const std::filesystem::path& path, const Image& img);

   std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
   void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}

#endif
