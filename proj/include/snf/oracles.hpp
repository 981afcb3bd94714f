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

// Slow reference implementations. Nothing here uses the integral-image or
// quantized machinery; each routine is a literal transcription of its
// defining formula so it can serve as ground truth and as a baseline.

#ifndef SNF_ORACLES_HPP_
#define SNF_ORACLES_HPP_

#include "snf/image.hpp"

namespace snf::oracles {

/// sum_{j in N_i} |v - I_j|^p over the clipped (2r+1)^2 window at (y, x).
double energy_at(const PlaneD& img, Index y, Index x, double v, double p, int r);

/// Exhaustive search over the grid with energy_at. Candidates within a 1e-10
/// relative margin of the minimum are tied; the lowest one wins.
double grid_argmin(const PlaneD& img, Index y, Index x, const QuantGrid& grid, double p, int r);

/// Sorting median of each clipped window; lower median for even counts.
PlaneD median_filter(const PlaneD& img, int r);

struct BilateralParams {
  double sigma_s = 3;    // spatial std-dev, pixels
  double sigma_r = 0.1;  // range std-dev, intensity
  int radius = 6;
};

/// Direct bilateral filter, w_ij = exp(-|j-i|^2 / 2 sigma_s^2) exp(-(I_j-I_i)^2 / 2 sigma_r^2).
PlaneD bilateral_filter(const PlaneD& img, const BilateralParams& bp);

/// Solves (Id + lambda grad^T grad) B = I with periodic forward differences,
/// exactly, in the frequency domain.
PlaneD tikhonov_filter(const PlaneD& img, double lambda);

/// (Id + lambda grad^T grad) B evaluated directly in the pixel domain.
PlaneD tikhonov_operator(const PlaneD& b, double lambda);

}  // namespace snf::oracles

#endif  // SNF_ORACLES_HPP_
