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

#ifndef BLINQS_TESTS_FIXTURES_HPP
#define BLINQS_TESTS_FIXTURES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "blinqs/codec.hpp"
#include "blinqs/image_io.hpp"
#include "blinqs/transcoder.hpp"

namespace blinqs::fixture
{

   // Golden fixture recipe. make_fixtures writes these files once; the
   // tests regenerate them in memory and compare bytes.
   inline const EncodeParams fixture_params{2, 16, 4, Exec::serial};
   inline constexpr double fixture_blind_rate = 0.25;
   inline constexpr double fixture_pcrd_rate = 0.5;

   struct FixtureSet
   {
       std::vector<std::uint8_t> full, blind, pcrd;
       Image full_image, blind_image, pcrd_image;
   };

   inline FixtureSet build_fixtures(const Image& src, Exec exec)
   {
       EncodeParams p = fixture_params;
       p.exec = exec;
       const auto enc = encode_image(src, p);

       FixtureSet f;
       f.full = enc.stream;
       f.blind = transcode(enc.stream, fixture_blind_rate);
       f.pcrd = pcrd_truncate(enc, rd_hulls(enc, exec), fixture_pcrd_rate);
       f.full_image = decode_image_stream(f.full, {exec});
       f.blind_image = decode_image_stream(f.blind, {exec});
       f.pcrd_image = decode_image_stream(f.pcrd, {exec});
       return f;
   }

   inline const std::vector<std::string> fixture_files = {"pattern.pgm",      "pattern_full.bqs",  "pattern_full.pgm",
                                                          "pattern_blind.bqs", "pattern_blind.pgm", "pattern_pcrd.bqs",
                                                          "pattern_pcrd.pgm"};

}

#endif
