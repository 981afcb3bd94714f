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

// Normalized cuts where every affinity-matrix product is one quantized joint
// filtering pass: W x costs O(B N) for any window size.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "snf/apps.hpp"
#include "snf/box_filter.hpp"

namespace snf::apps {
namespace {

constexpr Index kMaxCachedWeights = Index(1) << 22;
constexpr int kThresholdCandidates = 32;

Eigen::VectorXd masked(const Eigen::VectorXd& x, const Mask& m) {
  if (m.size() == 0) return x;
  return Eigen::Map<const Eigen::Array<bool, Eigen::Dynamic, 1>>(m.data(), m.size())
      .select(x.array(), 0.0)
      .matrix();
}

Eigen::VectorXd indicator(const Mask& m, Index n) {
  if (m.size() == 0) return Eigen::VectorXd::Ones(n);
  return Eigen::Map<const Eigen::Array<bool, Eigen::Dynamic, 1>>(m.data(), m.size())
      .cast<double>()
      .matrix();
}

}  // namespace

AffinityOperator::AffinityOperator(PlaneD guide, const FilterParams& params)
    : guide_(std::move(guide)),
      params_(params),
      grid_(detail::irls_grid(guide_, params.bins)),
      lo_(guide_.rows(), guide_.cols()),
      frac_(guide_.rows(), guide_.cols()) {
  params_.validate();
  for (Index y = 0; y < guide_.rows(); ++y)
    for (Index x = 0; x < guide_.cols(); ++x) {
      const auto [b, t] = grid_.locate(guide_(y, x));
      lo_(y, x) = b;
      frac_(y, x) = t;
    }
  if (Index(grid_.size()) * guide_.size() <= kMaxCachedWeights) {
    for (int b = 0; b < grid_.size(); ++b) bin_weights_.push_back(weights_for_bin(b));
  }
  degree_ = apply(Eigen::VectorXd::Ones(guide_.size()));
}

PlaneD AffinityOperator::weights_for_bin(int b) const {
  PlaneD w;
  detail::bin_weights(guide_, detail::is_8bit_levels(guide_), grid_[b], params_, w);
  return w;
}

Eigen::VectorXd AffinityOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != guide_.size()) throw ShapeError("vector length must equal the pixel count");
  const Index h = guide_.rows(), w = guide_.cols();
  const Eigen::Map<const PlaneD> xs(x.data(), h, w);
  PlaneD acc = PlaneD::Zero(h, w);
  PlaneD sums, weighted;
  IntegralImage ii;
  for (int b = 0; b < grid_.size(); ++b) {
    if (bin_weights_.empty()) {
      weighted = weights_for_bin(b) * xs;
    } else {
      weighted = bin_weights_[static_cast<size_t>(b)] * xs;
    }
    ii.assign(weighted);
    box_sum(ii, params_.radius, sums);
    for (Index y = 0; y < h; ++y)
      for (Index i = 0; i < w; ++i) {
        const int l = lo_(y, i);
        if (l == b) {
          acc(y, i) += (1.0 - frac_(y, i)) * sums(y, i);
        } else if (l + 1 == b && frac_(y, i) != 0.0) {
          acc(y, i) += frac_(y, i) * sums(y, i);
        }
      }
  }
  return Eigen::Map<const Eigen::VectorXd>(acc.data(), acc.size());
}

Eigen::VectorXd affinity_apply(const Eigen::VectorXd& x, const PlaneD& guide,
                               const FilterParams& params) {
  return AffinityOperator(guide, params).apply(x);
}

Eigen::VectorXd ncut_eigenvector(const AffinityOperator& W, const Mask& subset, int power_iters) {
  const Index n = W.size();
  if (subset.size() != 0 && subset.size() != n) throw ShapeError("subset mask size mismatch");
  if (power_iters < 0) throw ParameterError("power iteration count must be >= 0");
  const Eigen::VectorXd in_s = indicator(subset, n);
  const Eigen::ArrayXd d = masked(W.apply(in_s), subset).array();
  const Eigen::ArrayXd sqrt_d = d.sqrt();
  const Eigen::ArrayXd inv_sqrt_d = (in_s.array() > 0).select(1.0 / d.max(1e-300).sqrt(), 0.0);
  const Eigen::VectorXd u0 = sqrt_d.matrix().normalized();

  // Seed with the degree-centred guide; D^1/2 (g - mean_D g) is orthogonal
  // to the trivial eigenvector D^1/2 1.
  const Eigen::ArrayXd g = Eigen::Map<const Eigen::ArrayXd>(W.guide().data(), n);
  const double mean = (d * g).sum() / d.sum();
  Eigen::VectorXd z = (sqrt_d * (g - mean)).matrix();
  if (z.norm() < 1e-12 * std::sqrt(double(n))) {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (Index i = 0; i < n; ++i) z(i) = in_s(i) > 0 ? uni(rng) : 0.0;
  }
  z -= u0.dot(z) * u0;
  z.normalize();

  // Power iteration on (M + I)/2, M = D^-1/2 W D^-1/2, whose spectrum lies in
  // [0, 1] so the leading non-trivial eigenvalue also dominates in magnitude.
  for (int it = 0; it < power_iters; ++it) {
    const Eigen::VectorXd mz =
        (inv_sqrt_d * masked(W.apply((inv_sqrt_d * z.array()).matrix()), subset).array()).matrix();
    z = 0.5 * (mz + z);
    z -= u0.dot(z) * u0;
    const double norm = z.norm();
    if (norm == 0) break;
    z /= norm;
  }
  return (inv_sqrt_d * z.array()).matrix();
}

double ncut_value(const AffinityOperator& W, const Mask& subset, const Mask& in_a) {
  const Index n = W.size();
  const Eigen::VectorXd in_s = indicator(subset, n);
  const Eigen::VectorXd a = indicator(in_a, n).cwiseProduct(in_s);
  const Eigen::VectorXd b = in_s - a;
  const Eigen::VectorXd d = masked(W.apply(in_s), subset);
  const double assoc_a = a.dot(d), assoc_b = b.dot(d);
  if (assoc_a <= 0 || assoc_b <= 0) return std::numeric_limits<double>::infinity();
  const double cut = a.dot(d - W.apply(a));
  return cut / assoc_a + cut / assoc_b;
}

LabelMap ncut_segment(const PlaneD& img, int segments, const FilterParams& params,
                      int power_iters) {
  if (segments < 2) throw ParameterError("segment count must be >= 2");
  if (Index(segments) > img.size()) throw ParameterError("more segments than pixels");
  const AffinityOperator W(img, params);
  LabelMap labels = LabelMap::Zero(img.rows(), img.cols());
  std::vector<Index> sizes{img.size()};

  for (int next = 1; next < segments; ++next) {
    const int target = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (sizes[static_cast<size_t>(target)] < 2) break;
    const Mask subset = labels == target;
    const Eigen::VectorXd y = ncut_eigenvector(W, subset, power_iters);
    const Eigen::Map<const PlaneD> yp(y.data(), img.rows(), img.cols());

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Index i = 0; i < y.size(); ++i)
      if (subset.data()[i]) {
        lo = std::min(lo, y(i));
        hi = std::max(hi, y(i));
      }
    Mask best;
    if (hi > lo) {
      double best_value = std::numeric_limits<double>::infinity();
      for (int c = 0; c < kThresholdCandidates; ++c) {
        const double t = lo + (hi - lo) * double(c + 1) / double(kThresholdCandidates + 1);
        const Mask in_a = subset && (yp > t);
        const double v = ncut_value(W, subset, in_a);
        if (v < best_value) {
          best_value = v;
          best = in_a;
        }
      }
    }
    if (best.size() == 0 || !best.any() || best.count() == subset.count()) {
      // Degenerate eigenvector: split the segment in scan order.
      best = Mask::Constant(img.rows(), img.cols(), false);
      Index seen = 0;
      const Index half = subset.count() / 2;
      for (Index i = 0; i < subset.size(); ++i)
        if (subset.data()[i] && seen++ < half) best.data()[i] = true;
    }
    labels = best.select(LabelMap::Constant(img.rows(), img.cols(), next), labels);
    const Index moved = best.count();
    sizes[static_cast<size_t>(target)] -= moved;
    sizes.push_back(moved);
  }
  return labels;
}

}  // namespace snf::apps
