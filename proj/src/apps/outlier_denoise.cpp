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

Image outlier_denoise(const Image& img, const FilterParams& params) {
  FilterParams stage1 = params;
  stage1.strategy = Strategy::kBruteForce;
  stage1.iterations = 1;
  FilterParams stage2 = params;
  stage2.strategy = Strategy::kIrls;
  stage2.iterations = 1;
  stage2.spatial_sigma = 0;
  std::vector<PlaneD> out;
  for (const auto& channel : img.planes()) {
    const PlaneD estimate = snf_bruteforce(channel, stage1);
    out.push_back(snf_irls_step(channel, estimate, stage2));
  }
  return Image(std::move(out), img.range());
}

}  // namespace snf::apps
