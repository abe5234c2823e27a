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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blinqs/wavelet.hpp"

using namespace blinqs;

namespace
{
   // Published bior4.4 analysis taps, centre first.
   const double dec_lo[] = {0.8526986790088938, 0.37740285561283066, -0.11062440441843718, -0.023849465019556843,
                            0.03782845550726404};
   const double dec_hi[] = {-0.7884856164055829, 0.41809227322161724, 0.04068941760916406, -0.06453888262869706};

   double reflect(const std::vector<double>& x, long i)
   {
       const long n = long(x.size());
       const long period = 2 * (n - 1);
       i %= period;

       if (i < 0)
           i += period;

       return x[std::size_t(i < n ? i : period - i)];
   }

   // Direct filtering with whole-sample symmetric extension.
   std::vector<double> convolve_analysis(const std::vector<double>& x)
   {
       const std::size_t n = x.size(), nl = (n + 1) / 2;
       std::vector<double> out(n);

       for (std::size_t k = 0; k < nl; ++k)
       {
           double acc = dec_lo[0] * x[2 * k];

           for (int t = 1; t <= 4; ++t)
               acc += dec_lo[t] * (reflect(x, long(2 * k) - t) + reflect(x, long(2 * k) + t));

           out[k] = acc;
       }

       for (std::size_t k = 0; nl + k < n; ++k)
       {
           const long c = long(2 * k + 1);
           double acc = dec_hi[0] * reflect(x, c);

           for (int t = 1; t <= 3; ++t)
               acc += dec_hi[t] * (reflect(x, c - t) + reflect(x, c + t));

           out[nl + k] = acc;
       }

       return out;
   }

   RealGrid random_grid(std::size_t rows, std::size_t cols, unsigned seed)
   {
       std::mt19937 rng(seed);
       std::uniform_real_distribution<double> u(-128.0, 127.0);
       RealGrid g(rows, cols);

       for (auto& v : g.values())
           v = u(rng);

       return g;
   }

   double energy(const double* taps, int half)
   {
       double e = taps[0] * taps[0];

       for (int t = 1; t <= half; ++t)
           e += 2 * taps[t] * taps[t];

       return e;
   }
}

TEST(Wavelet, LiftingMatchesDirectConvolution)
{
   std::mt19937 rng(7);
   std::uniform_real_distribution<double> u(-200.0, 200.0);

   for (std::size_t n = 2; n <= 41; ++n)
   {
       std::vector<double> x(n);

       for (auto& v : x)
           v = u(rng);

       std::vector<double> line = x, scratch(n);
       analyze_line(line, scratch);
       const auto expect = convolve_analysis(x);

       for (std::size_t i = 0; i < n; ++i)
           ASSERT_NEAR(line[i], expect[i], 1e-9) << "n=" << n << " i=" << i;
   }
}

TEST(Wavelet, ConstantLineHasNoDetail)
{
   std::vector<double> line(16, 10.0), scratch(16);
   analyze_line(line, scratch);

   for (std::size_t i = 0; i < 8; ++i)
       EXPECT_NEAR(line[i], 10.0 * std::sqrt(2.0), 1e-9);

   for (std::size_t i = 8; i < 16; ++i)
       EXPECT_NEAR(line[i], 0.0, 1e-12);
}

TEST(Wavelet, LinePerfectReconstruction)
{
   std::mt19937 rng(3);
   std::uniform_real_distribution<double> u(-1000.0, 1000.0);

   for (std::size_t n = 1; n <= 70; ++n)
   {
       std::vector<double> x(n);

       for (auto& v : x)
           v = u(rng);

       std::vector<double> line = x, scratch(n);
       analyze_line(line, scratch);
       synthesize_line(line, scratch);

       for (std::size_t i = 0; i < n; ++i)
           ASSERT_NEAR(line[i], x[i], 1e-9);
   }
}

TEST(Wavelet, BandLayoutOddSizes)
{
   const auto bands = band_layout(13, 10, 2);
   ASSERT_EQ(bands.size(), 7u);

   EXPECT_EQ(bands[0], (BandGeometry{BandKind::LL, 2, 0, 0, 4, 3}));
   EXPECT_EQ(bands[1], (BandGeometry{BandKind::HL, 2, 0, 3, 4, 2}));
   EXPECT_EQ(bands[2], (BandGeometry{BandKind::LH, 2, 4, 0, 3, 3}));
   EXPECT_EQ(bands[3], (BandGeometry{BandKind::HH, 2, 4, 3, 3, 2}));
   EXPECT_EQ(bands[4], (BandGeometry{BandKind::HL, 1, 0, 5, 7, 5}));
   EXPECT_EQ(bands[5], (BandGeometry{BandKind::LH, 1, 7, 0, 6, 5}));
   EXPECT_EQ(bands[6], (BandGeometry{BandKind::HH, 1, 7, 5, 6, 5}));

   std::size_t area = 0;

   for (const auto& b : bands)
       area += b.rows * b.cols;

   EXPECT_EQ(area, 130u);
}

TEST(Wavelet, PyramidRoundTrip)
{
   for (auto [rows, cols, levels] : {std::tuple{64, 64, 3}, {37, 51, 3}, {16, 9, 2}, {512, 8, 3}})
   {
       const RealGrid g = random_grid(rows, cols, unsigned(rows * cols));
       const auto pyr = forward_dwt(g, levels);
       const RealGrid back = inverse_dwt(pyr);

       for (std::size_t i = 0; i < g.size(); ++i)
           ASSERT_NEAR(back[i], g[i], 1e-8);
   }
}

TEST(Wavelet, PyramidRejectsExcessiveDepth)
{
   EXPECT_THROW(forward_dwt(RealGrid(7, 64), 3), ArgumentError);
   EXPECT_NO_THROW(forward_dwt(RealGrid(8, 64), 3));
}

TEST(Wavelet, ConstantImageHasOnlyLowpass)
{
   RealGrid g(32, 32);

   for (auto& v : g.values())
       v = 5.0;

   const auto pyr = forward_dwt(g, 3);

   for (const auto& b : pyr.bands())
   {
       for (double v : b.coeffs.values())
       {
           if (b.geometry.kind == BandKind::LL)
               EXPECT_NEAR(v, 5.0 * 8.0, 1e-9);
           else
               EXPECT_NEAR(v, 0.0, 1e-9);
       }
   }
}

TEST(Wavelet, SerialAndParallelAgreeBitExactly)
{
   const RealGrid g = random_grid(129, 200, 11);
   const auto a = forward_dwt(g, 4, Exec::serial);
   const auto b = forward_dwt(g, 4, Exec::parallel);

   for (std::size_t i = 0; i < a.bands().size(); ++i)
       EXPECT_EQ(a.bands()[i].coeffs, b.bands()[i].coeffs);

   EXPECT_EQ(inverse_dwt(a, Exec::serial), inverse_dwt(b, Exec::parallel));
}

TEST(Wavelet, LevelShiftRoundsAndClamps)
{
   Image img(3, 1);
   img.samples = {0, 127, 255};
   const RealGrid g = level_shift(img, -127);
   EXPECT_EQ(g[0], -127.0);
   EXPECT_EQ(g[1], 0.0);
   EXPECT_EQ(g[2], 128.0);

   RealGrid r(1, 4);
   r[0] = -300.0;
   r[1] = -0.5;
   r[2] = 0.49;
   r[3] = 400.0;
   const Image back = level_shift(r, 127);
   EXPECT_EQ(back.samples, (std::vector<std::uint8_t>{0, 127, 127, 255}));

   EXPECT_THROW(level_shift(img, 128), ArgumentError);
}

TEST(Wavelet, CodeBlockPartitionCoversEveryCoefficient)
{
   const RealGrid g = random_grid(100, 70, 5);
   const auto pyr = forward_dwt(g, 3);
   const auto grid = partition_codeblocks(pyr, 16);

   SubbandPyramid rebuilt(pyr.rows(), pyr.cols(), pyr.levels());

   for (std::size_t i = 0; i < grid.count(); ++i)
   {
       EXPECT_EQ(grid.blocks[i].geometry.id, i);
       EXPECT_LE(grid.blocks[i].geometry.rows, 16u);
       EXPECT_LE(grid.blocks[i].geometry.cols, 16u);
       place_codeblock(rebuilt, grid.blocks[i].geometry, grid.blocks[i].coeffs);
   }

   for (std::size_t b = 0; b < pyr.bands().size(); ++b)
       EXPECT_EQ(rebuilt.bands()[b].coeffs, pyr.bands()[b].coeffs);

   EXPECT_THROW(block_layout(100, 70, 3, 12), ArgumentError);
   EXPECT_THROW(block_layout(100, 70, 3, 4), ArgumentError);
}

TEST(Wavelet, SecondaryTransformRoundTripAndPassThrough)
{
   const RealGrid block = random_grid(32, 24, 9);
   const auto fwd = block_secondary_dwt(block, Direction::forward);
   ASSERT_TRUE(fwd.applied);
   const auto inv = block_secondary_dwt(fwd.coeffs, Direction::inverse);

   for (std::size_t i = 0; i < block.size(); ++i)
       ASSERT_NEAR(inv.coeffs[i], block[i], 1e-9);

   const RealGrid small = random_grid(7, 32, 1);
   const auto pass = block_secondary_dwt(small, Direction::forward);
   EXPECT_FALSE(pass.applied);
   EXPECT_EQ(pass.coeffs, small);
}

TEST(Wavelet, SynthesisGainMatchesFilterEnergy)
{
   // Synthesis low-pass energy equals analysis high-pass energy for this
   // biorthogonal pair, and vice versa.
   const double lo = energy(dec_hi, 3), hi = energy(dec_lo, 4);

   EXPECT_NEAR(synthesis_gain(64, 64, 1, BandKind::LL, 1), lo * lo, 1e-9);
   EXPECT_NEAR(synthesis_gain(64, 64, 1, BandKind::HL, 1), lo * hi, 1e-9);
   EXPECT_NEAR(synthesis_gain(64, 64, 1, BandKind::LH, 1), hi * lo, 1e-9);
   EXPECT_NEAR(synthesis_gain(64, 64, 1, BandKind::HH, 1), hi * hi, 1e-9);
}
