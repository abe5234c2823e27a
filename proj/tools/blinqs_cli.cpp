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

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blinqs/codec.hpp"
#include "blinqs/image_io.hpp"
#include "blinqs/report.hpp"
#include "blinqs/transcoder.hpp"

using namespace blinqs;
using json = nlohmann::json;

namespace
{
   enum ExitCode
   {
       exit_ok = 0,
       exit_usage = 1,
       exit_format = 2,
       exit_invariant = 3
   };

   struct EncodeFlags
   {
       int levels = 3;
       int cb_size = 32;
       int delta_max = 4;
       bool serial = false;

       void attach(CLI::App* cmd)
       {
           cmd->add_option("--levels", levels, "Decomposition levels")->check(CLI::Range(1, 16));
           cmd->add_option("--cb-size", cb_size, "Code-block side (power of two, >= 8)");
           cmd->add_option("--delta-max", delta_max, "Largest quantiser step")->check(CLI::Range(2, 255));
           cmd->add_flag("--serial", serial, "Disable OpenMP parallelism");
       }

       EncodeParams params() const { return {levels, cb_size, delta_max, serial ? Exec::serial : Exec::parallel}; }
   };

   struct TranscodeFlags
   {
       int k_max = default_k_max;
       double tolerance = default_beta_tolerance;
       bool plane_aligned = false;
       bool top_up = false;
       bool rate_includes_header = false;

       void attach(CLI::App* cmd)
       {
           cmd->add_option("--k-max", k_max, "Largest refinement depth for non-standard rates")
               ->check(CLI::Range(1, 1 << 16));
           cmd->add_option("--tolerance", tolerance, "Stop refining once |R - R_k| is at most this (bpp)")
               ->check(CLI::PositiveNumber);
           cmd->add_flag("--plane-aligned", plane_aligned, "Cut blocks at bit-plane boundaries only");
           cmd->add_flag("--top-up", top_up, "Hand leftover budget bits back to included blocks");
           cmd->add_flag("--rate-includes-header", rate_includes_header,
                         "Charge header and padding bits against the target rate");
       }

       TranscodeOptions options() const { return {k_max, tolerance, {plane_aligned, top_up}}; }
   };

   std::string image_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

   json trace_json(const TranscodeTrace& t, const StreamHeader& header, double target_bpp, double payload_target,
                   const std::vector<std::uint8_t>& out)
   {
       const double pixels = double(header.pixels());
       json j;
       j["target_bpp"] = target_bpp;
       j["payload_target_bpp"] = payload_target;
       j["budget_bits"] = t.plan.budget_bits;
       j["rate_bits"] = t.plan.rate_bits;
       j["payload_bpp"] = double(t.plan.rate_bits) / pixels;
       j["total_bpp"] = 8.0 * double(out.size()) / pixels;
       j["total_bytes"] = out.size();

       j["profile"] = {{"blocks", header.blocks.size()},
                       {"mean_pl", t.profile.mean},
                       {"variance_pl", t.profile.variance},
                       {"sigma_pl", t.profile.sigma()},
                       {"degenerate", t.profile.degenerate}};

       json loc = {{"standard", t.location.standard},
                   {"below_range", t.location.below_range},
                   {"above_range", t.location.above_range}};

       if (t.location.s != 0)
       {
           loc["s"] = t.location.s;
           loc["delta_low"] = t.location.delta_low;
           loc["delta_high"] = t.location.delta_high;
       }

       j["location"] = loc;

       if (t.step)
           j["step"] = {{"j", t.step->j}, {"k", t.step->k}, {"x_new", t.step->x_new}, {"beta", t.step->beta}};

       if (t.partition)
       {
           j["partition"] = {{"base", t.partition->base},
                             {"offset", t.partition->offset},
                             {"subdivisions", t.partition->subdivisions}};
       }

       j["boundary_sigma"] = std::isfinite(t.boundary) ? json(t.boundary) : json(nullptr);
       j["inclusion"] = {{"blocks", t.inclusion.blocks}, {"fallback", t.inclusion.fallback}};
       j["truncation_points"] = t.plan.points;
       return j;
   }

   int run_encode(const std::string& in, const std::string& out, const EncodeFlags& flags, const std::string& mode,
                  double rate)
   {
       const Image img = read_image(in);
       const EncodedImage enc = encode_image(img, flags.params());

       if (parse_mode(mode) == RateMode::blinqs)
       {
           if (rate > 0.0)
               throw ArgumentError("--rate applies to --mode pcrd only; use transcode for blind rate adaptation");

           write_file(out, enc.stream);
       }
       else
       {
           if (!(rate > 0.0))
               throw ArgumentError("--mode pcrd needs a positive --rate");

           const auto hulls = rd_hulls(enc, flags.params().exec);
           write_file(out, pcrd_truncate(enc, hulls, rate));
       }

       return exit_ok;
   }

   int run_transcode(const std::string& in, const std::string& out, double rate, const TranscodeFlags& flags,
                     std::string report_path)
   {
       if (!(rate > 0.0) || !std::isfinite(rate))
           throw ArgumentError("--rate must be a positive number of bits per pixel");

       const auto bytes = read_file(in);
       const ParsedStream parsed = parse_header(bytes);
       const double payload = payload_target_bpp(parsed.header, rate, flags.rate_includes_header);

       TranscodeTrace trace;
       std::vector<std::uint8_t> result;

       if (std::floor(payload * double(parsed.header.pixels())) < 1.0)
       {
           trace.plan.points.assign(parsed.header.blocks.size(), 0);
           result = retruncate(bytes, parsed, trace.plan.points);
       }
       else
       {
           result = transcode(bytes, payload, flags.options(), &trace);
       }

       write_file(out, result);

       if (report_path.empty())
           report_path = out + ".json";

       if (report_path != "-")
       {
           std::ofstream rep(report_path);

           if (!rep)
               throw ArgumentError("cannot write " + report_path);

           rep << trace_json(trace, parsed.header, rate, payload, result).dump(2) << '\n';
       }

       return exit_ok;
   }

   int run_decode(const std::string& in, const std::string& out, bool serial)
   {
       const auto bytes = read_file(in);
       write_image(out, decode_image_stream(bytes, {serial ? Exec::serial : Exec::parallel}));
       return exit_ok;
   }

   void emit_csv(const std::string& path, const std::vector<RateReport>& rows, bool timing)
   {
       if (path == "-")
       {
           write_csv(std::cout, rows, timing);
           return;
       }

       std::ofstream csv(path);

       if (!csv)
           throw ArgumentError("cannot write " + path);

       write_csv(csv, rows, timing);
   }
}

int main(int argc, char** argv)
{
   CLI::App app{"BlinQS: blind rate adaptation of SPIHT-coded wavelet images"};
   app.require_subcommand(1);

   std::string in, out, mode = "blinqs", csv, report;
   double rate = 0.0;
   std::vector<double> rates;
   bool serial = false, no_timing = false;
   EncodeFlags enc_flags;
   TranscodeFlags tr_flags;

   auto* encode = app.add_subcommand("encode", "Encode a PGM/BMP image into a full-length .bqs stream");
   encode->add_option("input", in, "Input image")->required()->check(CLI::ExistingFile);
   encode->add_option("-o,--output", out, "Output .bqs")->required();
   encode->add_option("--mode", mode, "blinqs (full stream) or pcrd (Lagrangian truncation)")
       ->check(CLI::IsMember({"blinqs", "pcrd"}));
   encode->add_option("--rate", rate, "Target payload rate for --mode pcrd (bpp)");
   enc_flags.attach(encode);

   auto* tr = app.add_subcommand("transcode", "Blindly truncate a .bqs stream to a target rate");
   tr->add_option("input", in, "Input .bqs")->required()->check(CLI::ExistingFile);
   tr->add_option("--rate", rate, "Target rate (bpp)")->required();
   tr->add_option("-o,--output", out, "Output .bqs")->required();
   tr->add_option("--report", report, "Sidecar JSON path (default <output>.json, '-' to skip)");
   tr_flags.attach(tr);

   auto* dec = app.add_subcommand("decode", "Decode a .bqs stream to PGM (or BMP by extension)");
   dec->add_option("input", in, "Input .bqs")->required()->check(CLI::ExistingFile);
   dec->add_option("-o,--output", out, "Output image")->required();
   dec->add_flag("--serial", serial, "Disable OpenMP parallelism");

   auto* curve = app.add_subcommand("rd-curve", "Rate sweep of one mode, written as CSV");
   curve->add_option("input", in, "Input image")->required()->check(CLI::ExistingFile);
   curve->add_option("--rates", rates, "Comma-separated rates (bpp)")->delimiter(',')->required();
   curve->add_option("--mode", mode, "blinqs or pcrd")->check(CLI::IsMember({"blinqs", "pcrd"}));
   curve->add_option("--csv", csv, "CSV path ('-' for stdout)")->required();
   curve->add_flag("--no-timing", no_timing, "Write 0 in the ms column");
   enc_flags.attach(curve);
   tr_flags.attach(curve);

   auto* cmp = app.add_subcommand("compare", "Blind and PCRD truncation side by side, written as CSV");
   cmp->add_option("input", in, "Input image")->required()->check(CLI::ExistingFile);
   cmp->add_option("--rates", rates, "Comma-separated rates (default: the six standard rates)")->delimiter(',');
   cmp->add_option("--csv", csv, "CSV path ('-' for stdout)")->required();
   cmp->add_flag("--no-timing", no_timing, "Write 0 in the ms column");
   enc_flags.attach(cmp);
   tr_flags.attach(cmp);

   try
   {
       app.parse(argc, argv);
   }
   catch (const CLI::ParseError& e)
   {
       const int code = app.exit(e);
       return code == 0 ? exit_ok : exit_usage;
   }

   try
   {
       if (*encode)
           return run_encode(in, out, enc_flags, mode, rate);

       if (*tr)
           return run_transcode(in, out, rate, tr_flags, report);

       if (*dec)
           return run_decode(in, out, serial);

       CurveOptions opts{enc_flags.params(), tr_flags.options(), tr_flags.rate_includes_header};

       if (*curve)
       {
           emit_csv(csv, rd_curve(read_image(in), image_name(in), rates, parse_mode(mode), opts), !no_timing);
           return exit_ok;
       }

       if (rates.empty())
           rates.assign(standard_rates.begin(), standard_rates.end());

       emit_csv(csv, compare_modes(read_image(in), image_name(in), rates, opts), !no_timing);
       return exit_ok;
   }
   catch (const FormatError& e)
   {
       std::cerr << "blinqs: format error: " << e.what() << '\n';
       return exit_format;
   }
   catch (const ArgumentError& e)
   {
       std::cerr << "blinqs: " << e.what() << '\n';
       return exit_usage;
   }
   catch (const std::exception& e)
   {
       std::cerr << "blinqs: internal error: " << e.what() << '\n';
       return exit_invariant;
   }
}
