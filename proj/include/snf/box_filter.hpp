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

// Summed-area tables and the clipped-window box filter built on them.
//
// Windows are squares of half-width r centred on each pixel and clipped to
// the image; every average divides by the true number of pixels inside the
// clipped window. Accumulation is always in double precision.

#ifndef SNF_BOX_FILTER_HPP_
#define SNF_BOX_FILTER_HPP_

#include <Eigen/Core>

#include <algorithm>
#include <vector>

#include "snf/errors.hpp"
#include "snf/image.hpp"
#include "snf/parallel.hpp"

namespace snf {

/// (height+1) x (width+1) table; entry (y,x) holds the sum of all pixels
/// strictly above and to the left of (y,x). Row 0 and column 0 are zero.
class IntegralImage {
 public:
  using Table = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  IntegralImage() = default;

  template <typename Derived>
  explicit IntegralImage(const Eigen::ArrayBase<Derived>& plane) {
    assign(plane);
  }

  /// Rebuilds the table for a new plane, reusing storage when the size matches.
  template <typename Derived>
  void assign(const Eigen::ArrayBase<Derived>& plane) {
    const Index h = plane.rows(), w = plane.cols();
    if (table_.rows() != h + 1 || table_.cols() != w + 1) table_.resize(h + 1, w + 1);
    table_.row(0).setZero();
    for (Index y = 0; y < h; ++y) {
      double* above = table_.row(y).data();
      double* cur = table_.row(y + 1).data();
      cur[0] = 0.0;
      double run = 0.0;
      for (Index x = 0; x < w; ++x) {
        run += static_cast<double>(plane(y, x));
        cur[x + 1] = above[x + 1] + run;
      }
    }
  }

  Index width() const { return table_.cols() - 1; }
  Index height() const { return table_.rows() - 1; }
  double operator()(Index y, Index x) const { return table_(y, x); }
  const Table& table() const { return table_; }

  /// Sum over rows [y0, y1) and columns [x0, x1).
  double rect_sum(Index y0, Index x0, Index y1, Index x1) const {
    return table_(y1, x1) - table_(y0, x1) - table_(y1, x0) + table_(y0, x0);
  }

 private:
  Table table_;
};

template <typename Scalar>
IntegralImage integral_image(const ImageT<Scalar>& img) {
  if (img.channels() != 1) throw ShapeError("integral image requires a single channel");
  return IntegralImage(img.channel(0));
}

namespace detail {

// Clipped window bounds [lo, hi) along one axis.
struct AxisWindows {
  std::vector<Index> lo, hi;
  AxisWindows(Index n, Index r) : lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n)) {
    for (Index i = 0; i < n; ++i) {
      lo[static_cast<size_t>(i)] = std::max<Index>(0, i - r);
      hi[static_cast<size_t>(i)] = std::min<Index>(n, i + r + 1);
    }
  }
};

}  // namespace detail

/// Per-pixel window sums of half-width r from a prebuilt table, written into
/// `out` (resized as needed).
template <typename Scalar>
void box_sum(const IntegralImage& ii, int r, Plane<Scalar>& out) {
  if (r < 0) throw ParameterError("box radius must be >= 0");
  const Index h = ii.height(), w = ii.width();
  out.resize(h, w);
  const detail::AxisWindows ys(h, r), xs(w, r);
  const auto& t = ii.table();
  parallel_rows(h, [&](Index y) {
    const double* top = t.row(ys.lo[static_cast<size_t>(y)]).data();
    const double* bot = t.row(ys.hi[static_cast<size_t>(y)]).data();
    Scalar* dst = out.row(y).data();
    for (Index x = 0; x < w; ++x) {
      const Index x0 = xs.lo[static_cast<size_t>(x)], x1 = xs.hi[static_cast<size_t>(x)];
      dst[x] = static_cast<Scalar>((bot[x1] - top[x1]) - (bot[x0] - top[x0]));
    }
  });
}

inline PlaneD box_sum(const IntegralImage& ii, int r) {
  PlaneD out;
  box_sum(ii, r, out);
  return out;
}

/// Population |N_i| of every clipped window.
inline PlaneD window_counts(Index height, Index width, int r) {
  if (r < 0) throw ParameterError("box radius must be >= 0");
  const detail::AxisWindows ys(height, r), xs(width, r);
  PlaneD counts(height, width);
  for (Index y = 0; y < height; ++y) {
    const double ny = double(ys.hi[static_cast<size_t>(y)] - ys.lo[static_cast<size_t>(y)]);
    for (Index x = 0; x < width; ++x)
      counts(y, x) = ny * double(xs.hi[static_cast<size_t>(x)] - xs.lo[static_cast<size_t>(x)]);
  }
  return counts;
}

/// Window sums paired with window populations.
struct BoxSums {
  PlaneD sum;
  PlaneD count;
};

template <typename Scalar>
BoxSums box_sums(const Plane<Scalar>& plane, int r) {
  return {box_sum(IntegralImage(plane), r), window_counts(plane.rows(), plane.cols(), r)};
}

/// Arithmetic mean over each clipped window: the per-pixel least-squares
/// minimizer of sum_j (v - I_j)^2.
template <typename Scalar>
Plane<Scalar> box_mean(const Plane<Scalar>& plane, int r) {
  if (r < 1) throw ParameterError("box mean radius must be >= 1");
  const IntegralImage ii(plane);
  const Index h = plane.rows(), w = plane.cols();
  const detail::AxisWindows ys(h, r), xs(w, r);
  const auto& t = ii.table();
  Plane<Scalar> out(h, w);
  parallel_rows(h, [&](Index y) {
    const Index y0 = ys.lo[static_cast<size_t>(y)], y1 = ys.hi[static_cast<size_t>(y)];
    const double* top = t.row(y0).data();
    const double* bot = t.row(y1).data();
    const double ny = double(y1 - y0);
    Scalar* dst = out.row(y).data();
    for (Index x = 0; x < w; ++x) {
      const Index x0 = xs.lo[static_cast<size_t>(x)], x1 = xs.hi[static_cast<size_t>(x)];
      const double s = (bot[x1] - top[x1]) - (bot[x0] - top[x0]);
      dst[x] = static_cast<Scalar>(s / (ny * double(x1 - x0)));
    }
  });
  return out;
}

template <typename Scalar>
ImageT<Scalar> box_mean(const ImageT<Scalar>& img, int r) {
  std::vector<Plane<Scalar>> out;
  for (const auto& p : img.planes()) out.push_back(box_mean(p, r));
  return ImageT<Scalar>(std::move(out), img.range());
}

}  // namespace snf

#endif  // SNF_BOX_FILTER_HPP_
