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

#include "snf/presets.hpp"

#include <algorithm>
#include <cmath>

namespace snf {

FilterParams Preset::resolve(Index height, Index width) const {
  FilterParams fp;
  fp.p = p;
  fp.bins = bins;
  fp.iterations = iterations;
  fp.strategy = strategy;
  double r = radius;
  if (base == RadiusBase::kHeight) r *= double(height);
  if (base == RadiusBase::kWidth) r *= double(width);
  fp.radius = std::max(1, static_cast<int>(std::lround(r)));
  return fp;
}

const std::vector<Preset>& presets() {
  using RB = Preset::RadiusBase;
  static const std::vector<Preset> all = {
      {"smooth-l0", "near-l0 smoothing, small window", 0.05, 2},
      {"smooth", "edge-preserving smoothing and sharpening", 0.2, 10},
      {"smooth-soft", "softer, bilateral-like smoothing", 1.2, 10},
      {"halo-soft", "wide window, mild sparsity (shows slight halos)", 1.2, 16},
      {"halo-free", "wide window, near-l0 sparsity", 0.05, 16},
      {"denoise-l1", "outlier removal, median-like", 1.0, 10, RB::kPixels, 256},
      {"denoise-sparse", "outlier removal, mode-like", 0.1, 10, RB::kPixels, 256},
      {"hdr", "HDR base layer, radius = height / 6", 0.2, 1.0 / 6, RB::kHeight, 32},
      {"deconv", "sparse non-local deconvolution prior", 0.5, 5},
      {"flash", "flash / no-flash joint denoising", 0.2, 11},
      {"segment", "normalized-cut affinity, radius = width / 16", 0.3, 1.0 / 16, RB::kWidth, 32},
      {"colorize", "stroke colorization, radius = height / 4", 0.1, 0.25, RB::kHeight, 32, 10},
  };
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ParameterError("unknown preset '" + name + "'");
}

}  // namespace snf
