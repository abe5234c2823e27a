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

#ifndef BLINQS_METRICS_HPP
#define BLINQS_METRICS_HPP

#include <limits>

#include "blinqs/image.hpp"

namespace blinqs
{

   inline constexpr double psnr_identical = std::numeric_limits<double>::infinity();

   double mse(const Image& a, const Image& b);

   // 10 log10(255^2 / MSE); psnr_identical when the images are equal.
   double psnr(const Image& a, const Image& b);

   // Mean SSIM over every full 11x11 Gaussian window (sigma 1.5,
   // K1 = 0.01, K2 = 0.03, L = 255). Both sides must be at least 11.
   double ssim(const Image& a, const Image& b);

}

#endif
