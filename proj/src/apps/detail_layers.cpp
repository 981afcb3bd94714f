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

#include "snf/apps.hpp"

namespace snf::apps {

BaseDetail base_detail(const Image& img, const FilterParams& params, ColorPolicy policy) {
  Image base = snf(img, nullptr, params, policy);
  std::vector<PlaneD> detail;
  for (int c = 0; c < img.channels(); ++c) detail.push_back(img.channel(c) - base.channel(c));
  return {std::move(base), Image(std::move(detail), img.range())};
}

Image detail_boost(const BaseDetail& bd, double factor) {
  if (factor < 0) throw ParameterError("boost factor must be >= 0");
  if (!bd.base.same_shape(bd.detail)) throw ShapeError("base and detail layers differ in shape");
  std::vector<PlaneD> out;
  for (int c = 0; c < bd.base.channels(); ++c)
    out.push_back(bd.base.channel(c) + factor * bd.detail.channel(c));
  return Image(std::move(out), bd.base.range());
}

Image joint_filter(const Image& img, const Image& guide, const FilterParams& params,
                   ColorPolicy policy) {
  if (img.width() != guide.width() || img.height() != guide.height())
    throw ShapeError("guide and image dimensions differ");
  return snf(img, &guide, params, policy);
}

}  // namespace snf::apps
