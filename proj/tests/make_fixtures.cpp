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

// Writes the golden fixtures into the directory given on the command line.
// Only rerun this after an intentional format or codec change.

#include <iostream>

#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace blinqs;

int main(int argc, char** argv)
{
   if (argc != 2)
   {
       std::cerr << "usage: make_fixtures <dir>\n";
       return 1;
   }

   const std::filesystem::path dir = argv[1];
   std::filesystem::create_directories(dir);

   const Image src = fixture::synthetic_image(64, 48);
   write_image(dir / "pattern.pgm", src);

   // Re-read so the fixtures derive from the stored bytes, not from libm.
   const auto f = fixture::build_fixtures(read_image(dir / "pattern.pgm"), Exec::serial);
   write_file(dir / "pattern_full.bqs", f.full);
   write_file(dir / "pattern_blind.bqs", f.blind);
   write_file(dir / "pattern_pcrd.bqs", f.pcrd);
   write_image(dir / "pattern_full.pgm", f.full_image);
   write_image(dir / "pattern_blind.pgm", f.blind_image);
   write_image(dir / "pattern_pcrd.pgm", f.pcrd_image);
   return 0;
}
