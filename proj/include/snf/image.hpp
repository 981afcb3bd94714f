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

#ifndef SNF_IMAGE_HPP_
#define SNF_IMAGE_HPP_

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "snf/errors.hpp"

namespace snf {

using Eigen::Index;

/// One channel of an image: height rows by width columns, row-major.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PlaneD = Plane<double>;
using PlaneF = Plane<float>;

enum class DynamicRange { kLdr, kHdr };

/// Planar multi-channel image. LDR data lives in [0,1]; HDR data is
/// positive, unbounded luminance or radiance.
template <typename Scalar_>
class ImageT {
 public:
  using Scalar = Scalar_;
  using PlaneType = Plane<Scalar>;

  ImageT() = default;

  ImageT(Index width, Index height, int channels,
         DynamicRange range = DynamicRange::kLdr)
      : range_(range) {
    if (width < 1 || height < 1) throw ShapeError("image dimensions must be positive");
    if (channels != 1 && channels != 3) throw ShapeError("image must have 1 or 3 channels");
    planes_.assign(static_cast<size_t>(channels), PlaneType::Zero(height, width));
  }

  explicit ImageT(PlaneType plane, DynamicRange range = DynamicRange::kLdr)
      : range_(range) {
    if (plane.size() == 0) throw ShapeError("empty plane");
    planes_.push_back(std::move(plane));
  }

  explicit ImageT(std::vector<PlaneType> planes,
                  DynamicRange range = DynamicRange::kLdr)
      : planes_(std::move(planes)), range_(range) {
    if (planes_.size() != 1 && planes_.size() != 3)
      throw ShapeError("image must have 1 or 3 channels");
    for (const auto& p : planes_) {
      if (p.size() == 0 || p.rows() != planes_[0].rows() || p.cols() != planes_[0].cols())
        throw ShapeError("channel planes must share non-empty dimensions");
    }
  }

  Index width() const { return planes_.empty() ? 0 : planes_[0].cols(); }
  Index height() const { return planes_.empty() ? 0 : planes_[0].rows(); }
  int channels() const { return static_cast<int>(planes_.size()); }
  Index pixels() const { return width() * height(); }
  /// Total number of stored values, width * height * channels.
  Index size() const { return pixels() * channels(); }
  bool empty() const { return planes_.empty(); }

  DynamicRange range() const { return range_; }
  void set_range(DynamicRange r) { range_ = r; }

  PlaneType& channel(int c) { return planes_.at(static_cast<size_t>(c)); }
  const PlaneType& channel(int c) const { return planes_.at(static_cast<size_t>(c)); }
  const std::vector<PlaneType>& planes() const { return planes_; }

  Scalar& operator()(Index y, Index x, int c = 0) { return planes_[c](y, x); }
  Scalar operator()(Index y, Index x, int c = 0) const { return planes_[c](y, x); }

  bool same_shape(const ImageT& o) const {
    return width() == o.width() && height() == o.height() && channels() == o.channels();
  }

  template <typename To>
  ImageT<To> cast() const {
    std::vector<Plane<To>> out;
    out.reserve(planes_.size());
    for (const auto& p : planes_) out.push_back(p.template cast<To>());
    return ImageT<To>(std::move(out), range_);
  }

 private:
  std::vector<PlaneType> planes_;
  DynamicRange range_ = DynamicRange::kLdr;
};

using Image = ImageT<double>;
using ImageF = ImageT<float>;

template <typename Scalar>
ImageT<Scalar> clamped01(const ImageT<Scalar>& img) {
  std::vector<Plane<Scalar>> out;
  for (const auto& p : img.planes()) out.push_back(p.max(Scalar(0)).min(Scalar(1)));
  return ImageT<Scalar>(std::move(out), img.range());
}

// ---------------------------------------------------------------------------
// Luma/chroma transform (BT.601 luma, analog YUV chroma scaling).

/// Rows map (R,G,B) to (Y,U,V).
inline const Eigen::Matrix3d& rgb_to_yuv_matrix() {
  static const Eigen::Matrix3d m = [] {
    constexpr double kr = 0.299, kg = 0.587, kb = 0.114;
    Eigen::Matrix3d a;
    a.row(0) << kr, kg, kb;
    // U = 0.492111 (B - Y), V = 0.877283 (R - Y)
    a.row(1) = 0.492111 * (Eigen::RowVector3d(0, 0, 1) - a.row(0));
    a.row(2) = 0.877283 * (Eigen::RowVector3d(1, 0, 0) - a.row(0));
    return a;
  }();
  return m;
}

inline const Eigen::Matrix3d& yuv_to_rgb_matrix() {
  static const Eigen::Matrix3d m = rgb_to_yuv_matrix().inverse();
  return m;
}

namespace detail {
template <typename Scalar>
ImageT<Scalar> mix_channels(const ImageT<Scalar>& img, const Eigen::Matrix3d& m) {
  if (img.channels() != 3) throw ShapeError("color transform requires 3 channels");
  std::vector<Plane<Scalar>> out;
  for (int r = 0; r < 3; ++r) {
    Plane<Scalar> acc = Scalar(m(r, 0)) * img.channel(0) +
                        Scalar(m(r, 1)) * img.channel(1) +
                        Scalar(m(r, 2)) * img.channel(2);
    out.push_back(std::move(acc));
  }
  return ImageT<Scalar>(std::move(out), img.range());
}
}  // namespace detail

template <typename Scalar>
ImageT<Scalar> rgb_to_yuv(const ImageT<Scalar>& rgb) {
  return detail::mix_channels(rgb, rgb_to_yuv_matrix());
}

template <typename Scalar>
ImageT<Scalar> yuv_to_rgb(const ImageT<Scalar>& yuv) {
  return detail::mix_channels(yuv, yuv_to_rgb_matrix());
}

/// Luma plane of a 3-channel image, or the only plane of a grayscale one.
template <typename Scalar>
Plane<Scalar> luma(const ImageT<Scalar>& img) {
  if (img.channels() == 1) return img.channel(0);
  const auto& m = rgb_to_yuv_matrix();
  return Scalar(m(0, 0)) * img.channel(0) + Scalar(m(0, 1)) * img.channel(1) +
         Scalar(m(0, 2)) * img.channel(2);
}

// ---------------------------------------------------------------------------

/// Strictly increasing set of candidate intensities used by the quantized
/// filter paths.
class QuantGrid {
 public:
  explicit QuantGrid(std::vector<double> centers) : centers_(std::move(centers)) {
    if (centers_.size() < 2) throw ParameterError("quantization grid needs at least 2 bins");
    for (size_t b = 1; b < centers_.size(); ++b) {
      if (!(centers_[b] > centers_[b - 1]))
        throw ParameterError("quantization grid must be strictly increasing");
    }
    const double step = (centers_.back() - centers_.front()) / double(centers_.size() - 1);
    uniform_ = true;
    for (size_t b = 0; b < centers_.size(); ++b) {
      if (std::abs(centers_[b] - (centers_.front() + step * double(b))) > 1e-12 * (1 + step)) {
        uniform_ = false;
        break;
      }
    }
  }

  int size() const { return static_cast<int>(centers_.size()); }
  double operator[](int b) const { return centers_[static_cast<size_t>(b)]; }
  double front() const { return centers_.front(); }
  double back() const { return centers_.back(); }
  bool uniform() const { return uniform_; }
  const std::vector<double>& centers() const { return centers_; }

  /// Bracketing bins for v: returns {lo, t} with v ~ (1-t)*Q[lo] + t*Q[lo+1],
  /// lo in [0, B-2], t in [0,1]. Values outside the grid clamp to the ends.
  /// A value equal to a center yields t == 0 (or lo == B-2, t == 1 at the top).
  std::pair<int, double> locate(double v) const {
    const int last = size() - 1;
    if (!(v > centers_.front())) return {0, 0.0};
    if (!(v < centers_.back())) return {last - 1, 1.0};
    if (uniform_) {
      const double pos = (v - centers_.front()) / (centers_.back() - centers_.front()) * last;
      double k = std::floor(pos);
      // Snap positions within rounding error of a center onto it.
      if (pos - k > 1.0 - 1e-9) k += 1.0;
      if (k >= last) return {last - 1, 1.0};
      double t = pos - k;
      if (t < 1e-9) t = 0.0;
      return {static_cast<int>(k), t};
    }
    auto it = std::upper_bound(centers_.begin(), centers_.end(), v);
    const int lo = std::clamp(static_cast<int>(it - centers_.begin()) - 1, 0, last - 1);
    const double a = centers_[static_cast<size_t>(lo)];
    const double b = centers_[static_cast<size_t>(lo) + 1];
    return {lo, std::clamp((v - a) / (b - a), 0.0, 1.0)};
  }

 private:
  std::vector<double> centers_;
  bool uniform_ = false;
};

/// B uniform centers b/(B-1) over [0,1].
inline QuantGrid make_quant_grid(int bins) {
  if (bins < 2) throw ParameterError("bin count must be >= 2");
  std::vector<double> c(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b) c[static_cast<size_t>(b)] = double(b) / double(bins - 1);
  return QuantGrid(std::move(c));
}

/// B uniform centers spanning [lo, hi]; endpoints are hit exactly.
inline QuantGrid make_quant_grid(int bins, double lo, double hi) {
  if (bins < 2) throw ParameterError("bin count must be >= 2");
  if (!(hi > lo)) throw ParameterError("quantization range must be non-empty");
  std::vector<double> c(static_cast<size_t>(bins));
  for (int b = 0; b < bins; ++b)
    c[static_cast<size_t>(b)] = lo + (hi - lo) * (double(b) / double(bins - 1));
  c.back() = hi;
  return QuantGrid(std::move(c));
}

// ---------------------------------------------------------------------------

enum class Strategy { kIrls, kBruteForce };

/// Per-pixel l^p smoothing settings.
struct FilterParams {
  double p = 0.2;           // norm exponent, (0, 2]
  int radius = 10;          // window is (2r+1)^2, clipped at borders
  int bins = 16;            // quantization bins for the O(B N) paths
  double eps = 1.0 / 255;   // weight smoothing constant
  int iterations = 1;
  Strategy strategy = Strategy::kIrls;
  // Gaussian spatial falloff; 0 means all window pixels count equally.
  // Only the direct IRLS path supports it.
  double spatial_sigma = 0;

  void validate() const {
    if (!(p > 0 && p <= 2)) throw ParameterError("p must lie in (0, 2]");
    if (radius < 1) throw ParameterError("radius must be >= 1");
    if (bins < 2) throw ParameterError("bin count must be >= 2");
    if (!(eps > 0)) throw ParameterError("eps must be positive");
    if (iterations < 1) throw ParameterError("iterations must be >= 1");
    if (spatial_sigma < 0) throw ParameterError("spatial sigma must be >= 0");
  }
};

}  // namespace snf

#endif  // SNF_IMAGE_HPP_
