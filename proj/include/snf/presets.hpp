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

#ifndef SNF_PRESETS_HPP_
#define SNF_PRESETS_HPP_

#include <string>
#include <vector>

#include "snf/image.hpp"

namespace snf {

/// Named parameter sets for the reference settings of each pipeline. A
/// radius may be given as a fraction of the image height or width.
struct Preset {
  enum class RadiusBase { kPixels, kHeight, kWidth };

  std::string name;
  std::string summary;
  double p;
  double radius;  // pixels, or a fraction of the chosen dimension
  RadiusBase base = RadiusBase::kPixels;
  int bins = 16;
  int iterations = 1;
  Strategy strategy = Strategy::kIrls;

  FilterParams resolve(Index height, Index width) const;
};

const std::vector<Preset>& presets();

/// Throws ParameterError for unknown names.
const Preset& find_preset(const std::string& name);

}  // namespace snf

#endif  // SNF_PRESETS_HPP_
