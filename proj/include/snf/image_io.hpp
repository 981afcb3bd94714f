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

#ifndef SNF_IMAGE_IO_HPP_
#define SNF_IMAGE_IO_HPP_

#include <optional>
#include <string>

#include "snf/image.hpp"

namespace snf {

// LDR files: PNG (8/16-bit gray, gray+alpha, RGB, RGBA) and binary PGM/PPM
// (P5/P6, maxval up to 65535). Codes are divided by the maximum code value.
// HDR files: PFM ("Pf" gray / "PF" colour), stored as 32-bit floats.
// The format is chosen from the file extension.

enum class ImageKind { kLdr, kHdr };

Image load_image(const std::string& path, ImageKind kind = ImageKind::kLdr);

/// LDR saves clamp to [0,1] and write 8-bit codes unless bit_depth == 16.
void save_image(const Image& img, const std::string& path,
                ImageKind kind = ImageKind::kLdr, int bit_depth = 8);

/// Colour image plus its alpha plane (all ones when the file has none).
struct RgbaImage {
  Image color;
  PlaneD alpha;
};

RgbaImage load_rgba(const std::string& path);

}  // namespace snf

#endif  // SNF_IMAGE_IO_HPP_
