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

#include <algorithm>
#include <cmath>

#include "snf/apps.hpp"
#include "snf/box_filter.hpp"

namespace snf::apps {
namespace {

void validate(const CloneTask& task) {
  if (task.source.channels() != task.target.channels())
    throw ShapeError("source and target channel counts differ");
  const Mask& m = task.region;
  if (m.rows() != task.target.height() || m.cols() != task.target.width())
    throw ShapeError("clone region must match the target dimensions");
  if (!m.any()) throw ParameterError("clone region is empty");
  if (m.row(0).any() || m.row(m.rows() - 1).any() || m.col(0).any() || m.col(m.cols() - 1).any())
    throw ParameterError("clone region touches the image border");
}

// |N_i| X_i - sum_{j in N_i} X_j.
PlaneD nonlocal_laplacian(const PlaneD& x, const PlaneD& counts, int r) {
  return counts * x - box_sum(IntegralImage(x), r);
}

}  // namespace

PlaneD aligned_source(const CloneTask& task, int channel) {
  const Index h = task.target.height(), w = task.target.width();
  const Index sh = task.source.height(), sw = task.source.width();
  const PlaneD& src = task.source.channel(channel);
  PlaneD out(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x)
      out(y, x) = src(std::clamp<Index>(y - task.offset_y, 0, sh - 1),
                      std::clamp<Index>(x - task.offset_x, 0, sw - 1));
  return out;
}

double clone_relative_residual(const PlaneD& solution, const PlaneD& source_aligned,
                               const Mask& region, int r) {
  const PlaneD counts = window_counts(solution.rows(), solution.cols(), r);
  const PlaneD lhs = nonlocal_laplacian(solution, counts, r);
  const PlaneD rhs = nonlocal_laplacian(source_aligned, counts, r);
  const double res = region.select(lhs - rhs, 0.0).matrix().norm();
  const double ref = region.select(rhs, 0.0).matrix().norm();
  return ref > 0 ? res / ref : res;
}

Image seamless_clone(const CloneTask& task, int r, int iters, std::vector<double>* residuals) {
  validate(task);
  if (r < 1) throw ParameterError("clone radius must be >= 1");
  if (iters < 0) throw ParameterError("iteration count must be >= 0");
  const Index h = task.target.height(), w = task.target.width();
  const PlaneD counts = window_counts(h, w, r);
  if (residuals) residuals->clear();

  std::vector<PlaneD> out;
  for (int c = 0; c < task.target.channels(); ++c) {
    const PlaneD src = aligned_source(task, c);
    // |N_i| J_i - sum_j J_j is fixed across iterations.
    const PlaneD guidance = nonlocal_laplacian(src, counts, r);
    PlaneD cur = task.region.select(src, task.target.channel(c));
    if (residuals && c == 0) residuals->push_back(clone_relative_residual(cur, src, task.region, r));
    PlaneD sums;
    IntegralImage ii;
    for (int it = 0; it < iters; ++it) {
      ii.assign(cur);
      box_sum(ii, r, sums);
      cur = task.region.select((sums + guidance) / counts, cur);
      if (residuals && c == 0)
        residuals->push_back(clone_relative_residual(cur, src, task.region, r));
    }
    out.push_back(std::move(cur));
  }
  return Image(std::move(out), task.target.range());
}

}  // namespace snf::apps
