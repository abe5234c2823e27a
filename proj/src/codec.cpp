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

#include "blinqs/codec.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <utility>

namespace blinqs
{

   namespace
   {
       bool wants_secondary(const BlockGeometry& g)
       {
           return g.kind != BandKind::LL;
       }

       // Runs body(i) for i in [0, n), rethrowing the first exception.
       template <class F>
       void for_blocks(std::size_t n, Exec exec, F&& body)
       {
           std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
           for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i)
           {
               try
               {
                   body(std::size_t(i));
               }
               catch (...)
               {
#pragma omp critical(blinqs_failure)
                   if (!failure)
                       failure = std::current_exception();
               }
           }

           if (failure)
               std::rethrow_exception(failure);
       }

       [[noreturn]] void geometry(const std::string& what)
       {
           throw FormatError(FormatError::Kind::geometry_mismatch, what);
       }

       // Checks that the header describes the block layout its own
       // parameters imply.
       std::vector<BlockGeometry> validate_geometry(const StreamHeader& h)
       {
           if (h.levels < 1 || h.levels > 30)
               geometry("decomposition levels out of range");

           if ((std::uint64_t(h.width) >> h.levels) == 0 || (std::uint64_t(h.height) >> h.levels) == 0)
               geometry("image too small for the recorded decomposition depth");

           if (h.cb_size < 8 || (h.cb_size & (h.cb_size - 1)) != 0)
               geometry("code-block size must be a power of two >= 8");

           if (h.delta_max < 2)
               geometry("delta_max must be at least 2");

           auto layout = block_layout(h.height, h.width, h.levels, h.cb_size);

           if (layout.size() != h.blocks.size())
               geometry("block count does not match the recorded geometry");

           for (std::size_t i = 0; i < layout.size(); ++i)
           {
               const auto& rec = h.blocks[i];
               const auto& g = layout[i];

               if (rec.band != g.kind || rec.level != g.level)
                   geometry("block " + std::to_string(i) + " sits in the wrong band");

               const bool applied = rec.flags & BlockFlags::secondary_applied;
               const bool fits = g.rows >= min_secondary_side && g.cols >= min_secondary_side;

               if (applied != (wants_secondary(g) && fits))
                   geometry("block " + std::to_string(i) + " has inconsistent secondary-transform flags");
           }

           return layout;
       }
   }

   EncodedImage encode_image(const Image& img, const EncodeParams& params)
   {
       const auto schedule = compute_delta_schedule(params.levels, params.delta_max);
       const RealGrid shifted = level_shift(img, -127);
       const SubbandPyramid pyr = forward_dwt(shifted, params.levels, params.exec);
       CodeBlockGrid grid = partition_codeblocks(pyr, params.cb_size);

       const auto n = grid.count();
       EncodedImage enc;
       enc.blocks.resize(n);
       enc.originals.resize(n);
       enc.deltas.resize(n);
       enc.weights.resize(n);

       std::map<std::pair<BandKind, int>, double> gains;

       for (const auto& b : pyr.bands())
       {
           const auto key = std::make_pair(b.geometry.kind, b.geometry.level);
           gains[key] = synthesis_gain(pyr.rows(), pyr.cols(), pyr.levels(), key.first, key.second);
       }

       std::vector<std::uint8_t> skipped(n, 0);

       for_blocks(n, params.exec, [&](std::size_t i) {
           const auto& g = grid.blocks[i].geometry;
           const int delta = schedule.delta(g.kind, g.level);
           RealGrid coeffs = grid.blocks[i].coeffs;
           bool secondary = false;

           if (wants_secondary(g))
           {
               auto sec = block_secondary_dwt(coeffs, Direction::forward);
               secondary = sec.applied;
               coeffs = std::move(sec.coeffs);
           }

           CodedBlock cb = encode_block(quantize(coeffs, delta), secondary ? TreeLayout::quadrant : TreeLayout::flat);
           cb.id = g.id;
           cb.band = g.kind;
           cb.level = g.level;

           enc.blocks[i] = std::move(cb);
           enc.originals[i] = std::move(grid.blocks[i].coeffs);
           enc.deltas[i] = delta;
           enc.weights[i] = gains.at({g.kind, g.level});
           skipped[i] = wants_secondary(g) && !secondary;
       });

       StreamHeader& h = enc.header;
       h.width = img.width;
       h.height = img.height;
       h.levels = std::uint8_t(params.levels);
       h.cb_size = std::uint16_t(params.cb_size);
       h.delta_max = std::uint8_t(params.delta_max);

       std::vector<BitBuffer> payloads;
       payloads.reserve(n);

       for (std::size_t i = 0; i < n; ++i)
       {
           h.blocks.push_back(make_record(enc.blocks[i], skipped[i]));
           payloads.push_back(enc.blocks[i].payload);
       }

       enc.stream = serialize(h, payloads);
       return enc;
   }

   Image decode_image_stream(std::span<const std::uint8_t> stream, const DecodeParams& params)
   {
       const ParsedStream parsed = parse_header(stream);
       const StreamHeader& h = parsed.header;
       const auto layout = validate_geometry(h);
       const auto schedule = compute_delta_schedule(h.levels, h.delta_max);

       SubbandPyramid pyr(h.height, h.width, h.levels);
       std::vector<RealGrid> recon(layout.size());

       for_blocks(layout.size(), params.exec, [&](std::size_t i) {
           const auto& g = layout[i];
           const auto& rec = h.blocks[i];

           if (rec.length() == 0)
               return;

           CodedBlock cb;
           cb.id = g.id;
           cb.band = g.kind;
           cb.level = g.level;
           cb.secondary = rec.flags & BlockFlags::secondary_applied;
           cb.rows = g.rows;
           cb.cols = g.cols;
           cb.planes = rec.planes;
           cb.plane_lengths = rec.lengths;
           cb.payload = block_payload(stream, parsed, i);

           const DecodedBlock dec = decode_block(cb, cb.length());
           RealGrid coeffs = dequantize(dec.values, dec.unresolved, schedule.delta(g.kind, g.level),
                                        params.dequantization);

           if (cb.secondary)
               coeffs = block_secondary_dwt(coeffs, Direction::inverse).coeffs;

           recon[i] = std::move(coeffs);
       });

       // Blocks left out by truncation stay zero.
       for (std::size_t i = 0; i < layout.size(); ++i)
       {
           if (!recon[i].empty())
               place_codeblock(pyr, layout[i], recon[i]);
       }

       return level_shift(inverse_dwt(pyr, params.exec), 127);
   }

   std::vector<RDCurve> rd_hulls(const EncodedImage& enc, Exec exec)
   {
       std::vector<RDCurve> hulls(enc.blocks.size());

       for_blocks(enc.blocks.size(), exec, [&](std::size_t i) {
           const BlockSource src{&enc.blocks[i], &enc.originals[i], enc.deltas[i], enc.weights[i]};
           hulls[i] = convex_hull(collect_rd_points(src));
       });

       return hulls;
   }

   std::vector<std::uint8_t> pcrd_truncate(const EncodedImage& enc, std::span<const RDCurve> hulls, double bpp,
                                           LagrangeSelection* selection)
   {
       if (!(bpp > 0.0) || !std::isfinite(bpp))
           throw ArgumentError("target rate must be a positive number of bits per pixel");

       if (hulls.size() != enc.blocks.size())
           throw ArgumentError("one hull per block is required");

       const auto budget = std::uint64_t(std::floor(bpp * double(enc.header.pixels())));
       LagrangeSelection sel = bisect_lambda(hulls, budget);

       std::vector<std::uint64_t> keep(hulls.size(), 0);

       for (std::size_t i = 0; i < hulls.size(); ++i)
       {
           if (!hulls[i].empty())
               keep[i] = hulls[i][sel.points[i]].rate;
       }

       auto out = retruncate(enc.stream, parse_header(enc.stream), keep);

       if (selection != nullptr)
           *selection = std::move(sel);

       return out;
   }

   std::uint64_t payload_bits(std::span<const std::uint8_t> stream)
   {
       return parse_header(stream).header.payload_bits();
   }

}
