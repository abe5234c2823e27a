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

#include "blinqs/metrics.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "blinqs/error.hpp"

namespace blinqs
{

   namespace
   {
       constexpr int window = 11;

       void require_same_shape(const Image& a, const Image& b)
       {
           if (a.width != b.width || a.height != b.height)
               throw ArgumentError("image dimensions differ");
       }

       std::array<double, window> gaussian_taps()
       {
           std::array<double, window> w{};
           double sum = 0.0;

           for (int i = 0; i < window; ++i)
           {
               const double d = i - window / 2;
               w[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
               sum += w[i];
           }

           for (auto& v : w)
               v /= sum;

           return w;
       }

       // Separable valid-mode filtering of a plane.
       std::vector<double> filter_valid(const std::vector<double>& in, std::size_t w, std::size_t h,
                                        const std::array<double, window>& taps)
       {
           const std::size_t ow = w - window + 1, oh = h - window + 1;
           std::vector<double> tmp(ow * h), out(ow * oh);

           for (std::size_t y = 0; y < h; ++y)
               for (std::size_t x = 0; x < ow; ++x)
               {
                   double acc = 0.0;

                   for (int k = 0; k < window; ++k)
                       acc += taps[k] * in[y * w + x + k];

                   tmp[y * ow + x] = acc;
               }

           for (std::size_t y = 0; y < oh; ++y)
               for (std::size_t x = 0; x < ow; ++x)
               {
                   double acc = 0.0;

                   for (int k = 0; k < window; ++k)
                       acc += taps[k] * tmp[(y + k) * ow + x];

                   out[y * ow + x] = acc;
               }

           return out;
       }
   }

   double mse(const Image& a, const Image& b)
   {
       require_same_shape(a, b);
       double sse = 0.0;

       for (std::size_t i = 0; i < a.samples.size(); ++i)
       {
           const double d = double(a.samples[i]) - double(b.samples[i]);
           sse += d * d;
       }

       return sse / double(a.samples.size());
   }

   double psnr(const Image& a, const Image& b)
   {
       const double m = mse(a, b);

       if (m == 0.0)
           return psnr_identical;

       return 10.0 * std::log10(255.0 * 255.0 / m);
   }

   double ssim(const Image& a, const Image& b)
   {
       require_same_shape(a, b);

       if (a.width < window || a.height < window)
           throw ArgumentError("SSIM needs images of at least 11x11");

       const std::size_t w = a.width, h = a.height, n = w * h;
       std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);

       for (std::size_t i = 0; i < n; ++i)
       {
           x[i] = a.samples[i];
           y[i] = b.samples[i];
           xx[i] = x[i] * x[i];
           yy[i] = y[i] * y[i];
           xy[i] = x[i] * y[i];
       }

       const auto taps = gaussian_taps();
       const auto mx = filter_valid(x, w, h, taps);
       const auto my = filter_valid(y, w, h, taps);
       const auto sxx = filter_valid(xx, w, h, taps);
       const auto syy = filter_valid(yy, w, h, taps);
       const auto sxy = filter_valid(xy, w, h, taps);

       const double c1 = (0.01 * 255) * (0.01 * 255);
       const double c2 = (0.03 * 255) * (0.03 * 255);
       double total = 0.0;

       for (std::size_t i = 0; i < mx.size(); ++i)
       {
           const double vx = sxx[i] - mx[i] * mx[i];
           const double vy = syy[i] - my[i] * my[i];
           const double cov = sxy[i] - mx[i] * my[i];
           total += ((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) /
                    ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
       }

       return total / double(mx.size());
   }

}
