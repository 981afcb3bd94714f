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

#include <cmath>

#include "snf/apps.hpp"

namespace snf::apps {

HdrLayers hdr_layers(const PlaneD& luminance, const FilterParams& params, const HdrOptions& opts) {
  if (!(luminance > 0).all()) throw DomainError("HDR luminance must be strictly positive");
  if (!(opts.target_contrast > 0)) throw ParameterError("target contrast must be positive");
  HdrLayers l;
  l.log_luminance = (luminance + 1e-6).log10();
  l.base = snf(l.log_luminance, params);
  l.detail = l.log_luminance - l.base;
  const double bmax = l.base.maxCoeff(), bmin = l.base.minCoeff();
  const double scale = bmax > bmin ? opts.target_contrast / (bmax - bmin) : 1.0;
  l.compressed_base = bmax + (l.base - bmax) * scale;
  const PlaneD combined = l.compressed_base + l.detail;
  l.output_log = combined - combined.maxCoeff();
  return l;
}

Image hdr_compress(const Image& hdr, const FilterParams& params, const HdrOptions& opts) {
  const PlaneD lum = luma(hdr);
  const HdrLayers l = hdr_layers(lum, params, opts);
  const PlaneD lum_out = (l.output_log * std::log(10.0)).exp();
  if (hdr.channels() == 1) return Image(lum_out.min(1.0).max(0.0), DynamicRange::kLdr);
  std::vector<PlaneD> out;
  for (int c = 0; c < 3; ++c) {
    const PlaneD ratio = hdr.channel(c).max(0.0) / lum;
    out.push_back((ratio.pow(opts.saturation) * lum_out).min(1.0).max(0.0));
  }
  return Image(std::move(out), DynamicRange::kLdr);
}

}  // namespace snf::apps
