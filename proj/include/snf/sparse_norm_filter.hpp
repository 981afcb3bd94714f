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

// Sparse norm filter: every output pixel approximately minimizes
//
//     E_i(v) = sum_{j in N_i} |v - I_j|^p,   0 < p <= 2,
//
// over the clipped square window N_i (which contains i). Two strategies:
//
//  * IRLS: one reweighted least-squares step, a weighted mean with
//    w_ij = (d_ij^2 + eps^2)^((p-2)/2). The quantized path fixes the weight
//    centre at B bin values so numerator and denominator become 2B box sums,
//    then interpolates linearly between the two bins bracketing each pixel.
//  * Brute force: evaluate E at every grid value with B box sums of the
//    per-bin penalty image and keep the smallest (lowest index on ties).

#ifndef SNF_SPARSE_NORM_FILTER_HPP_
#define SNF_SPARSE_NORM_FILTER_HPP_

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include "snf/box_filter.hpp"
#include "snf/errors.hpp"
#include "snf/image.hpp"
#include "snf/parallel.hpp"

namespace snf {

/// (d^2 + eps^2)^((p-2)/2). Exactly 1 when p == 2.
template <typename Scalar>
inline Scalar snf_weight(Scalar diff, double p, double eps) {
  if (p == 2.0) return Scalar(1);
  const double d = static_cast<double>(diff);
  return static_cast<Scalar>(std::pow(d * d + eps * eps, 0.5 * (p - 2.0)));
}

namespace detail {

template <typename Scalar>
void check_same_shape(const Plane<Scalar>& a, const Plane<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("guide and image dimensions differ");
}

// True when every value is k/255 for an integer k in [0,255].
template <typename Scalar>
bool is_8bit_levels(const Plane<Scalar>& plane) {
  const Index n = plane.size();
  const Scalar* d = plane.data();
  for (Index i = 0; i < n; ++i) {
    const double v = static_cast<double>(d[i]);
    if (!(v >= 0.0 && v <= 1.0)) return false;
    const double k = std::round(v * 255.0);
    if (static_cast<Scalar>(k / 255.0) != d[i]) return false;
  }
  return true;
}

// Grid used by the quantized IRLS path: [0,1] for LDR data, widened to the
// guide's range when it extends outside (log-luminance, signed vectors).
template <typename Scalar>
QuantGrid irls_grid(const Plane<Scalar>& guide, int bins) {
  const double lo = std::min(0.0, static_cast<double>(guide.minCoeff()));
  const double hi = std::max(1.0, static_cast<double>(guide.maxCoeff()));
  if (lo == 0.0 && hi == 1.0) return make_quant_grid(bins);
  return make_quant_grid(bins, lo, hi);
}

// Fills w with snf_weight(center - guide_j). For 8-bit guides the 256
// possible weights are tabulated once.
template <typename Scalar>
void bin_weights(const Plane<Scalar>& guide, bool guide_8bit, double center,
                 const FilterParams& params, PlaneD& w) {
  w.resize(guide.rows(), guide.cols());
  if (guide_8bit) {
    std::array<double, 256> lut;
    for (int k = 0; k < 256; ++k)
      lut[static_cast<size_t>(k)] = snf_weight(center - static_cast<double>(static_cast<Scalar>(k / 255.0)),
                                               params.p, params.eps);
    parallel_rows(guide.rows(), [&](Index y) {
      for (Index x = 0; x < guide.cols(); ++x)
        w(y, x) = lut[static_cast<size_t>(std::lround(static_cast<double>(guide(y, x)) * 255.0))];
    });
  } else {
    parallel_rows(guide.rows(), [&](Index y) {
      for (Index x = 0; x < guide.cols(); ++x)
        w(y, x) = snf_weight(center - static_cast<double>(guide(y, x)), params.p, params.eps);
    });
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// IRLS, direct O(N r^2) path.

/// Weighted mean over each window with weights from guide differences
/// snf_weight(G_i - G_j) and values from img.
template <typename Scalar>
Plane<Scalar> snf_irls_direct(const Plane<Scalar>& img, const Plane<Scalar>& guide,
                              const FilterParams& params) {
  params.validate();
  detail::check_same_shape(img, guide);
  const Index h = img.rows(), w = img.cols();
  const int r = params.radius;
  std::vector<double> spatial;
  if (params.spatial_sigma > 0) {
    const int side = 2 * r + 1;
    spatial.resize(static_cast<size_t>(side * side));
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx)
        spatial[static_cast<size_t>((dy + r) * side + dx + r)] =
            std::exp(-(dx * dx + dy * dy) / (2 * params.spatial_sigma * params.spatial_sigma));
  }
  Plane<Scalar> out(h, w);
  parallel_rows(h, [&](Index y) {
    const Index y0 = std::max<Index>(0, y - r), y1 = std::min<Index>(h - 1, y + r);
    for (Index x = 0; x < w; ++x) {
      const Index x0 = std::max<Index>(0, x - r), x1 = std::min<Index>(w - 1, x + r);
      const double gi = static_cast<double>(guide(y, x));
      double num = 0, den = 0;
      for (Index v = y0; v <= y1; ++v) {
        for (Index u = x0; u <= x1; ++u) {
          double wt = snf_weight(gi - static_cast<double>(guide(v, u)), params.p, params.eps);
          if (!spatial.empty())
            wt *= spatial[static_cast<size_t>((v - y + r) * (2 * r + 1) + (u - x + r))];
          num += wt * static_cast<double>(img(v, u));
          den += wt;
        }
      }
      out(y, x) = static_cast<Scalar>(num / den);
    }
  });
  return out;
}

template <typename Scalar>
Plane<Scalar> snf_irls_direct(const Plane<Scalar>& img, const FilterParams& params) {
  return snf_irls_direct(img, img, params);
}

// ---------------------------------------------------------------------------
// IRLS, quantized O(B N) path.

namespace detail {

// Quantized weighted mean with w_ij = snf_weight(C_i - G_j): bins are located
// by the centre plane C, per-bin weights are computed from the neighbour
// plane G.
template <typename Scalar>
Plane<Scalar> irls_quantized(const Plane<Scalar>& img, const Plane<Scalar>& center,
                             const Plane<Scalar>& neighbor, const FilterParams& params) {
  params.validate();
  if (params.spatial_sigma > 0)
    throw ParameterError("the quantized path supports uniform windows only");
  check_same_shape(img, center);
  check_same_shape(img, neighbor);
  const Index h = img.rows(), w = img.cols();
  const QuantGrid grid = &center == &neighbor
                             ? irls_grid(center, params.bins)
                             : irls_grid(Plane<Scalar>(center.min(neighbor.minCoeff()).max(neighbor.maxCoeff())),
                                         params.bins);
  const bool neighbor_8bit = is_8bit_levels(neighbor);

  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> lo(h, w);
  PlaneD frac(h, w);
  parallel_rows(h, [&](Index y) {
    for (Index x = 0; x < w; ++x) {
      const auto [b, t] = grid.locate(static_cast<double>(center(y, x)));
      lo(y, x) = b;
      frac(y, x) = t;
    }
  });

  const PlaneD values = img.template cast<double>();
  PlaneD wts, weighted, num, den;
  PlaneD acc = PlaneD::Zero(h, w);
  IntegralImage ii;
  for (int b = 0; b < grid.size(); ++b) {
    bin_weights(neighbor, neighbor_8bit, grid[b], params, wts);
    weighted = wts * values;
    ii.assign(weighted);
    box_sum(ii, params.radius, num);
    ii.assign(wts);
    box_sum(ii, params.radius, den);
    parallel_rows(h, [&](Index y) {
      for (Index x = 0; x < w; ++x) {
        const int l = lo(y, x);
        if (l == b) {
          acc(y, x) += (1.0 - frac(y, x)) * (num(y, x) / den(y, x));
        } else if (l + 1 == b) {
          const double t = frac(y, x);
          if (t != 0.0) acc(y, x) += t * (num(y, x) / den(y, x));
        }
      }
    });
  }
  return acc.template cast<Scalar>();
}

}  // namespace detail

/// For every bin centre Q_b: numer_b = box_sum(w_b * I), denom_b = box_sum(w_b)
/// with w_b(j) = snf_weight(Q_b - G_j). The result at pixel i interpolates
/// numer_b / denom_b linearly between the bins bracketing G_i, and equals
/// that bin's quotient when G_i is a bin centre.
template <typename Scalar>
Plane<Scalar> snf_irls_quantized(const Plane<Scalar>& img, const Plane<Scalar>& guide,
                                 const FilterParams& params) {
  return detail::irls_quantized(img, guide, guide, params);
}

/// One reweighting step taken from the estimate U: w_ij = snf_weight(U_i - I_j),
/// output_i = sum_j w_ij I_j / sum_j w_ij. Neighbours far from the estimate
/// (outliers) get small weights. Quantized like snf_irls_quantized, with bins
/// located by U.
template <typename Scalar>
Plane<Scalar> snf_irls_step(const Plane<Scalar>& img, const Plane<Scalar>& estimate,
                            const FilterParams& params) {
  return detail::irls_quantized(img, estimate, img, params);
}

template <typename Scalar>
Plane<Scalar> snf_irls_quantized(const Plane<Scalar>& img, const FilterParams& params) {
  return snf_irls_quantized(img, img, params);
}

// ---------------------------------------------------------------------------
// Quantized brute force.

/// Energies closer than this (relative) count as ties. Window sums read from
/// an integral image carry rounding noise, so exactly tied candidates (flat
/// l1 minima on even-sized windows) would otherwise be ordered at random.
inline constexpr double kBruteForceTieTolerance = 1e-10;

/// Per pixel, the grid value minimizing sum_{j in N_i} |Q_b - I_j|^p. Ties go
/// to the lowest bin.
template <typename Scalar>
Plane<Scalar> snf_bruteforce(const Plane<Scalar>& img, const FilterParams& params,
                             const QuantGrid& grid) {
  params.validate();
  const Index h = img.rows(), w = img.cols();
  const bool levels_8bit = detail::is_8bit_levels(img);
  const PlaneD values = img.template cast<double>();

  PlaneD best_energy = PlaneD::Constant(h, w, std::numeric_limits<double>::infinity());
  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> best =
      Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(h, w);
  PlaneD penalty(h, w), energy;
  IntegralImage ii;
  std::array<double, 256> lut;
  for (int b = 0; b < grid.size(); ++b) {
    const double q = grid[b];
    if (levels_8bit) {
      for (int k = 0; k < 256; ++k)
        lut[static_cast<size_t>(k)] =
            std::pow(std::abs(q - static_cast<double>(static_cast<Scalar>(k / 255.0))), params.p);
      parallel_rows(h, [&](Index y) {
        for (Index x = 0; x < w; ++x)
          penalty(y, x) = lut[static_cast<size_t>(std::lround(values(y, x) * 255.0))];
      });
    } else {
      parallel_rows(h, [&](Index y) {
        for (Index x = 0; x < w; ++x) penalty(y, x) = std::pow(std::abs(q - values(y, x)), params.p);
      });
    }
    ii.assign(penalty);
    box_sum(ii, params.radius, energy);
    parallel_rows(h, [&](Index y) {
      for (Index x = 0; x < w; ++x) {
        const double e = best_energy(y, x);
        if (b == 0 || energy(y, x) < e - kBruteForceTieTolerance * (1.0 + e)) {
          best_energy(y, x) = energy(y, x);
          best(y, x) = b;
        }
      }
    });
  }
  Plane<Scalar> out(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x) out(y, x) = static_cast<Scalar>(grid[best(y, x)]);
  return out;
}

template <typename Scalar>
Plane<Scalar> snf_bruteforce(const Plane<Scalar>& img, const FilterParams& params) {
  return snf_bruteforce(img, params, make_quant_grid(params.bins));
}

// ---------------------------------------------------------------------------
// Dispatcher.

/// Runs params.iterations rounds of the selected strategy. Each round averages
/// the previous round's output; its weights come from the guide when one is
/// given, otherwise from the previous output.
template <typename Scalar>
Plane<Scalar> snf(const Plane<Scalar>& img, std::type_identity_t<const Plane<Scalar>*> guide,
                  const FilterParams& params) {
  params.validate();
  if (guide) detail::check_same_shape(img, *guide);
  Plane<Scalar> cur = img;
  for (int it = 0; it < params.iterations; ++it) {
    const Plane<Scalar>& g = guide ? *guide : cur;
    if (params.strategy == Strategy::kBruteForce) {
      cur = snf_bruteforce(cur, params);
    } else if (params.spatial_sigma > 0) {
      cur = snf_irls_direct(cur, g, params);
    } else {
      cur = snf_irls_quantized(cur, g, params);
    }
  }
  return cur;
}

template <typename Scalar>
Plane<Scalar> snf(const Plane<Scalar>& img, const FilterParams& params) {
  return snf(img, static_cast<const Plane<Scalar>*>(nullptr), params);
}

template <typename Scalar>
Plane<Scalar> snf(const Plane<Scalar>& img, const Plane<Scalar>& guide,
                  const FilterParams& params) {
  return snf(img, &guide, params);
}

// ---------------------------------------------------------------------------
// Whole-image wrappers.

enum class ColorPolicy {
  kLuma,        // filter luma, pass chroma through
  kPerChannel,  // filter every channel; weights from the shared guide
};

/// Filters a 1- or 3-channel image. With kLuma a colour image is filtered in
/// luma only; with kPerChannel every channel is filtered with weights from
/// the guide's luma (or each channel's own values when no guide is given).
template <typename Scalar>
ImageT<Scalar> snf(const ImageT<Scalar>& img, std::type_identity_t<const ImageT<Scalar>*> guide,
                   const FilterParams& params, ColorPolicy policy = ColorPolicy::kLuma) {
  if (guide && (guide->width() != img.width() || guide->height() != img.height()))
    throw ShapeError("guide and image dimensions differ");
  std::optional<Plane<Scalar>> guide_plane;
  if (guide) guide_plane = luma(*guide);
  const Plane<Scalar>* g = guide_plane ? &*guide_plane : nullptr;

  if (img.channels() == 1) return ImageT<Scalar>(snf(img.channel(0), g, params), img.range());
  if (policy == ColorPolicy::kLuma) {
    ImageT<Scalar> yuv = rgb_to_yuv(img);
    yuv.channel(0) = snf(yuv.channel(0), g, params);
    return yuv_to_rgb(yuv);
  }
  std::vector<Plane<Scalar>> out;
  for (const auto& p : img.planes()) out.push_back(snf(p, g, params));
  return ImageT<Scalar>(std::move(out), img.range());
}

}  // namespace snf

#endif  // SNF_SPARSE_NORM_FILTER_HPP_
