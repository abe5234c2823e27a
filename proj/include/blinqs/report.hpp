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

#ifndef BLINQS_REPORT_HPP
#define BLINQS_REPORT_HPP

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "blinqs/codec.hpp"
#include "blinqs/transcoder.hpp"

namespace blinqs
{

   enum class RateMode
   {
       blinqs,
       pcrd
   };

   const char* mode_name(RateMode mode);
   RateMode parse_mode(const std::string& name);

   struct RateReport
   {
       std::string image;
       RateMode mode = RateMode::blinqs;
       double target_bpp = 0.0;
       double payload_bpp = 0.0;
       double total_bpp = 0.0; // payload plus header, block records and byte padding
       double psnr_db = 0.0;
       double ssim = 0.0;
       double ms = 0.0; // truncation plus decode
   };

   struct CurveOptions
   {
       EncodeParams encode;
       TranscodeOptions transcode;
       // Charge header and padding bits against the target as well.
       bool rate_includes_header = false;
   };

   // Payload budget (in bpp) left for a stream with this header.
   double payload_target_bpp(const StreamHeader& header, double target_bpp, bool rate_includes_header);

   // Truncates the encoder's full stream to one target rate.
   std::vector<std::uint8_t> truncate_to_rate(const EncodedImage& enc, double target_bpp, RateMode mode,
                                              const CurveOptions& opts, std::span<const RDCurve> hulls = {});

   std::vector<RateReport> rd_curve(const Image& img, const std::string& name, std::span<const double> rates,
                                    RateMode mode, const CurveOptions& opts = {});

   // Both modes over one shared encode.
   std::vector<RateReport> compare_modes(const Image& img, const std::string& name, std::span<const double> rates,
                                         const CurveOptions& opts = {});

   // Rows stable-sorted by (image, mode, target_bpp). With timing off the
   // ms column is written as 0 so output diffs cleanly.
   void write_csv(std::ostream& out, std::vector<RateReport> rows, bool timing = true);

}

#endif
