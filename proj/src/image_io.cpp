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

#include "blinqs/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace blinqs
{

   namespace
   {
       [[noreturn]] void malformed(const std::string& what)
       {
           throw FormatError(FormatError::Kind::malformed_image, what);
       }

       class PnmTokens
       {
       public:
           explicit PnmTokens(std::span<const std::uint8_t> in) : _in(in), _pos(2) {}

           std::uint32_t number()
           {
               skip_space();
               std::uint64_t v = 0;
               std::size_t digits = 0;

               while (_pos < _in.size() && std::isdigit(_in[_pos]))
               {
                   v = v * 10 + (_in[_pos++] - '0');

                   if (v > 0xFFFFFFFFu)
                       malformed("PGM header value too large");

                   ++digits;
               }

               if (digits == 0)
                   malformed("malformed PGM header");

               return std::uint32_t(v);
           }

           // Exactly one whitespace byte separates maxval from the raster.
           std::size_t raster_start()
           {
               if (_pos >= _in.size() || !std::isspace(_in[_pos]))
                   malformed("malformed PGM header");

               return _pos + 1;
           }

       private:
           void skip_space()
           {
               while (_pos < _in.size())
               {
                   if (_in[_pos] == '#')
                   {
                       while (_pos < _in.size() && _in[_pos] != '\n')
                           ++_pos;
                   }
                   else if (std::isspace(_in[_pos]))
                   {
                       ++_pos;
                   }
                   else
                   {
                       break;
                   }
               }
           }

           std::span<const std::uint8_t> _in;
           std::size_t _pos;
       };

       Image decode_pgm(std::span<const std::uint8_t> bytes)
       {
           PnmTokens tok(bytes);
           const auto width = tok.number();
           const auto height = tok.number();
           const auto maxval = tok.number();
           const auto start = tok.raster_start();

           if (width == 0 || height == 0)
               malformed("PGM with zero dimension");

           if (maxval != 255)
               throw FormatError(FormatError::Kind::unsupported_image,
                                 "PGM maxval " + std::to_string(maxval) + " unsupported (only 255)");

           const std::uint64_t n = std::uint64_t(width) * height;

           if (bytes.size() - start < n)
               malformed("PGM raster truncated");

           Image img(width, height);
           std::copy_n(bytes.begin() + std::ptrdiff_t(start), n, img.samples.begin());
           return img;
       }

       std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t off)
       {
           return std::uint32_t(b[off]) | std::uint32_t(b[off + 1]) << 8 | std::uint32_t(b[off + 2]) << 16 |
                  std::uint32_t(b[off + 3]) << 24;
       }

       std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t off)
       {
           return std::uint16_t(b[off] | b[off + 1] << 8);
       }

       void put32(std::vector<std::uint8_t>& out, std::uint32_t v)
       {
           for (int s = 0; s < 32; s += 8)
               out.push_back(std::uint8_t(v >> s));
       }

       void put16(std::vector<std::uint8_t>& out, std::uint16_t v)
       {
           out.push_back(std::uint8_t(v));
           out.push_back(std::uint8_t(v >> 8));
       }

       Image decode_bmp(std::span<const std::uint8_t> bytes)
       {
           if (bytes.size() < 54)
               malformed("BMP header truncated");

           const auto data_offset = le32(bytes, 10);
           const auto info_size = le32(bytes, 14);
           const auto width = std::int32_t(le32(bytes, 18));
           const auto raw_height = std::int32_t(le32(bytes, 22));
           const auto bpp = le16(bytes, 28);
           const auto compression = le32(bytes, 30);
           auto colors = le32(bytes, 46);

           if (info_size < 40)
               throw FormatError(FormatError::Kind::unsupported_image, "unsupported BMP info header");

           if (bpp != 8 || compression != 0)
               throw FormatError(FormatError::Kind::unsupported_image,
                                 "only uncompressed 8-bit BMP is supported");

           if (width <= 0 || raw_height == 0)
               malformed("BMP with zero dimension");

           if (colors == 0)
               colors = 256;

           const std::size_t palette_at = 14 + info_size;

           if (colors > 256 || palette_at + 4 * std::size_t(colors) > bytes.size())
               malformed("BMP palette truncated");

           std::uint8_t lut[256] = {};

           for (std::uint32_t i = 0; i < colors; ++i)
           {
               const auto* e = &bytes[palette_at + 4 * i];

               if (e[0] != e[1] || e[1] != e[2])
                   throw FormatError(FormatError::Kind::unsupported_image, "BMP palette is not grayscale");

               lut[i] = e[0];
           }

           const bool bottom_up = raw_height > 0;
           const auto height = std::uint32_t(bottom_up ? raw_height : -raw_height);
           const std::size_t stride = (std::size_t(width) + 3) & ~std::size_t(3);

           if (data_offset + stride * height > bytes.size())
               malformed("BMP raster truncated");

           Image img(std::uint32_t(width), height);

           for (std::uint32_t y = 0; y < height; ++y)
           {
               const auto src_row = bottom_up ? height - 1 - y : y;
               const auto* src = &bytes[data_offset + src_row * stride];

               for (std::uint32_t x = 0; x < std::uint32_t(width); ++x)
                   img.at(x, y) = lut[src[x]];
           }

           return img;
       }
   }

   Image decode_image(std::span<const std::uint8_t> bytes)
   {
       if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
           return decode_pgm(bytes);

       if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M')
           return decode_bmp(bytes);

       if (bytes.size() >= 2 && bytes[0] == 'P')
           throw FormatError(FormatError::Kind::unsupported_image, "only binary (P5) PGM is supported");

       throw FormatError(FormatError::Kind::unsupported_image, "unrecognised image format");
   }

   Image read_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

   std::vector<std::uint8_t> encode_pgm(const Image& img)
   {
       const std::string head = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
       std::vector<std::uint8_t> out(head.begin(), head.end());
       out.insert(out.end(), img.samples.begin(), img.samples.end());
       return out;
   }

   std::vector<std::uint8_t> encode_bmp(const Image& img)
   {
       const std::size_t stride = (std::size_t(img.width) + 3) & ~std::size_t(3);
       const std::uint32_t data_offset = 14 + 40 + 256 * 4;
       const std::uint32_t file_size = data_offset + std::uint32_t(stride * img.height);

       std::vector<std::uint8_t> out;
       out.reserve(file_size);
       out.push_back('B');
       out.push_back('M');
       put32(out, file_size);
       put32(out, 0);
       put32(out, data_offset);

       put32(out, 40);
       put32(out, img.width);
       put32(out, img.height);
       put16(out, 1);
       put16(out, 8);
       put32(out, 0);
       put32(out, std::uint32_t(stride * img.height));
       put32(out, 2835);
       put32(out, 2835);
       put32(out, 256);
       put32(out, 0);

       for (int i = 0; i < 256; ++i)
       {
           out.insert(out.end(), {std::uint8_t(i), std::uint8_t(i), std::uint8_t(i), 0});
       }

       for (std::uint32_t y = img.height; y-- > 0;)
       {
           const auto* row = &img.samples[std::size_t(y) * img.width];
           out.insert(out.end(), row, row + img.width);
           out.resize(out.size() + stride - img.width, 0);
       }

       return out;
   }

   void write_image(const std::filesystem::path& path, const Image& img)
   {
       auto ext = path.extension().string();
       std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
       write_file(path, ext == ".bmp" ? encode_bmp(img) : encode_pgm(img));
   }

   std::vector<std::uint8_t> read_file(const std::filesystem::path& path)
   {
       std::ifstream in(path, std::ios::binary);

       if (!in)
           throw ArgumentError("cannot open " + path.string());

       return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
   }

   void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
   {
       std::ofstream out(path, std::ios::binary);

       if (!out)
           throw ArgumentError("cannot write " + path.string());

       out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
   }

}
