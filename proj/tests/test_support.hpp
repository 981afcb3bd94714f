// Copyright 2026 The SNF Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared generators for the test binaries.

#ifndef SNF_TESTS_TEST_SUPPORT_HPP_
#define SNF_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <random>

#include "snf/image.hpp"

namespace snf::testing {

inline PlaneD random_plane(Index h, Index w, unsigned seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  PlaneD p(h, w);
  for (Index i = 0; i < p.size(); ++i) p.data()[i] = uni(rng);
  return p;
}

/// Uniform random 8-bit levels k/255.
inline PlaneD random_8bit_plane(Index h, Index w, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> uni(0, 255);
  PlaneD p(h, w);
  for (Index i = 0; i < p.size(); ++i) p.data()[i] = uni(rng) / 255.0;
  return p;
}

/// Values k/256, exactly representable, so window sums are exact in double.
inline PlaneD random_dyadic_plane(Index h, Index w, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> uni(0, 256);
  PlaneD p(h, w);
  for (Index i = 0; i < p.size(); ++i) p.data()[i] = uni(rng) / 256.0;
  return p;
}

/// Left half `a`, right half `b`.
inline PlaneD step_plane(Index h, Index w, double a = 0.0, double b = 1.0) {
  PlaneD p(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x) p(y, x) = x < w / 2 ? a : b;
  return p;
}

/// Four flat rectangles at 8-bit levels.
inline PlaneD piecewise_constant(Index h, Index w) {
  PlaneD p(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x)
      p(y, x) = (y < h / 2 ? (x < w / 3 ? 51 : 179) : (x < 2 * w / 3 ? 115 : 217)) / 255.0;
  return p;
}

/// Replaces a `fraction` of the pixels by 0 or 1 with equal odds.
inline PlaneD salt_and_pepper(const PlaneD& p, double fraction, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  PlaneD out = p;
  for (Index i = 0; i < out.size(); ++i)
    if (uni(rng) < fraction) out.data()[i] = uni(rng) < 0.5 ? 0.0 : 1.0;
  return out;
}

inline PlaneD gaussian_noise(Index h, Index w, double sigma, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, sigma);
  PlaneD p(h, w);
  for (Index i = 0; i < p.size(); ++i) p.data()[i] = n(rng);
  return p;
}

/// Flat shapes with sharp boundaries, used as a deblurring target.
inline PlaneD cartoon(Index h, Index w) {
  PlaneD p(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x) {
      double v = 0.25;
      if (x > w / 8 && x < w / 2 && y > h / 8 && y < h / 2) v = 0.8;
      const double dy = double(y) - 0.65 * h, dx = double(x) - 0.6 * w;
      if (dx * dx + dy * dy < 0.06 * h * w) v = 0.55;
      if (y > 3 * h / 4 && x < w / 3) v = 0.05;
      p(y, x) = v;
    }
  return p;
}

inline PlaneD flip_lr(const PlaneD& p) { return p.rowwise().reverse(); }
inline PlaneD flip_ud(const PlaneD& p) { return p.colwise().reverse(); }
inline PlaneD transpose(const PlaneD& p) { return p.transpose(); }

inline double max_abs_diff(const PlaneD& a, const PlaneD& b) { return (a - b).abs().maxCoeff(); }

inline double rmse(const PlaneD& a, const PlaneD& b) {
  return std::sqrt((a - b).square().mean());
}

}  // namespace snf::testing

#endif  // SNF_TESTS_TEST_SUPPORT_HPP_
