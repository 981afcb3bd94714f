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

#include "snf/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "snf/fft2.hpp"

namespace snf::oracles {

double energy_at(const PlaneD& img, Index y, Index x, double v, double p, int r) {
  if (y < 0 || x < 0 || y >= img.rows() || x >= img.cols())
    throw IndexError("pixel outside the image");
  double e = 0;
  for (Index j = std::max<Index>(0, y - r); j <= std::min<Index>(img.rows() - 1, y + r); ++j)
    for (Index i = std::max<Index>(0, x - r); i <= std::min<Index>(img.cols() - 1, x + r); ++i)
      e += std::pow(std::abs(v - img(j, i)), p);
  return e;
}

double grid_argmin(const PlaneD& img, Index y, Index x, const QuantGrid& grid, double p, int r) {
  std::vector<double> e(static_cast<size_t>(grid.size()));
  for (int b = 0; b < grid.size(); ++b) e[static_cast<size_t>(b)] = energy_at(img, y, x, grid[b], p, r);
  const double m = *std::min_element(e.begin(), e.end());
  for (int b = 0; b < grid.size(); ++b)
    if (e[static_cast<size_t>(b)] <= m + 1e-10 * (1.0 + m)) return grid[b];
  return grid[0];
}

PlaneD median_filter(const PlaneD& img, int r) {
  PlaneD out(img.rows(), img.cols());
  std::vector<double> win;
  for (Index y = 0; y < img.rows(); ++y) {
    for (Index x = 0; x < img.cols(); ++x) {
      win.clear();
      for (Index j = std::max<Index>(0, y - r); j <= std::min<Index>(img.rows() - 1, y + r); ++j)
        for (Index i = std::max<Index>(0, x - r); i <= std::min<Index>(img.cols() - 1, x + r); ++i)
          win.push_back(img(j, i));
      std::sort(win.begin(), win.end());
      out(y, x) = win[(win.size() - 1) / 2];
    }
  }
  return out;
}

PlaneD bilateral_filter(const PlaneD& img, const BilateralParams& bp) {
  if (!(bp.sigma_s > 0 && bp.sigma_r > 0 && bp.radius > 0))
    throw ParameterError("bilateral parameters must be positive");
  const int r = bp.radius;
  PlaneD out(img.rows(), img.cols());
  for (Index y = 0; y < img.rows(); ++y) {
    for (Index x = 0; x < img.cols(); ++x) {
      double num = 0, den = 0;
      for (Index j = std::max<Index>(0, y - r); j <= std::min<Index>(img.rows() - 1, y + r); ++j) {
        for (Index i = std::max<Index>(0, x - r); i <= std::min<Index>(img.cols() - 1, x + r); ++i) {
          const double ds = double((j - y) * (j - y) + (i - x) * (i - x));
          const double dr = img(j, i) - img(y, x);
          const double w = std::exp(-ds / (2 * bp.sigma_s * bp.sigma_s)) *
                           std::exp(-dr * dr / (2 * bp.sigma_r * bp.sigma_r));
          num += w * img(j, i);
          den += w;
        }
      }
      out(y, x) = num / den;
    }
  }
  return out;
}

PlaneD tikhonov_filter(const PlaneD& img, double lambda) {
  if (lambda < 0) throw ParameterError("lambda must be >= 0");
  if (lambda == 0) return img;
  const Index h = img.rows(), w = img.cols();
  const ComplexPlane dx = difference_otf(h, w, 0, 1);
  const ComplexPlane dy = difference_otf(h, w, 1, 0);
  const PlaneD denom = 1.0 + lambda * (dx.abs2() + dy.abs2());
  return ifft2_real(fft2(img) / denom.cast<std::complex<double>>());
}

PlaneD tikhonov_operator(const PlaneD& b, double lambda) {
  const Index h = b.rows(), w = b.cols();
  PlaneD out(h, w);
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      const Index xp = (x + 1) % w, xm = (x + w - 1) % w;
      const Index yp = (y + 1) % h, ym = (y + h - 1) % h;
      // grad^T grad is the periodic 5-point Laplacian (negated).
      const double lap = 4 * b(y, x) - b(y, xp) - b(y, xm) - b(yp, x) - b(ym, x);
      out(y, x) = b(y, x) + lambda * lap;
    }
  }
  return out;
}

}  // namespace snf::oracles
