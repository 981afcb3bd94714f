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

// Scribble colorization. Chroma spreads from stroke pixels by repeated
// guide-weighted averaging, where each pixel's contribution is scaled by a
// confidence that starts at 1 on strokes and 0 elsewhere and diffuses along
// with the chroma. Starting the averaging from zero chroma would dilute a
// single stroke towards zero instead.

#include "snf/apps.hpp"

namespace snf::apps {

StrokeMap StrokeMap::from_overlay(const RgbaImage& overlay) {
  const Image yuv = rgb_to_yuv(overlay.color);
  StrokeMap s;
  s.mask = overlay.alpha > 0;
  s.u = yuv.channel(1);
  s.v = yuv.channel(2);
  return s;
}

namespace {

Eigen::VectorXd flat(const PlaneD& p) { return Eigen::Map<const Eigen::VectorXd>(p.data(), p.size()); }

PlaneD unflat(const Eigen::VectorXd& v, Index rows, Index cols) {
  return Eigen::Map<const PlaneD>(v.data(), rows, cols);
}

}  // namespace

std::pair<PlaneD, PlaneD> diffuse_chroma(const PlaneD& gray, const StrokeMap& strokes,
                                         const FilterParams& params) {
  params.validate();
  const Index h = gray.rows(), w = gray.cols();
  if (strokes.mask.rows() != h || strokes.mask.cols() != w || strokes.u.rows() != h ||
      strokes.u.cols() != w || strokes.v.rows() != h || strokes.v.cols() != w)
    throw ShapeError("stroke map and gray image dimensions differ");
  if (strokes.count() == 0) throw ParameterError("colorization needs at least one stroke pixel");

  const AffinityOperator W(gray, params);
  const Eigen::VectorXd degree = W.degree();
  const PlaneD stroke_conf = strokes.mask.cast<double>();
  PlaneD u = strokes.mask.select(strokes.u, 0.0);
  PlaneD v = strokes.mask.select(strokes.v, 0.0);
  PlaneD conf = stroke_conf;

  for (int it = 0; it < params.iterations; ++it) {
    const PlaneD den = unflat(W.apply(flat(conf)), h, w);
    const PlaneD nu = unflat(W.apply(flat(conf * u)), h, w);
    const PlaneD nv = unflat(W.apply(flat(conf * v)), h, w);
    const auto reached = den > 0;
    u = reached.select(nu / den, u);
    v = reached.select(nv / den, v);
    conf = den / unflat(degree, h, w);
    u = strokes.mask.select(strokes.u, u);
    v = strokes.mask.select(strokes.v, v);
    conf = strokes.mask.select(stroke_conf, conf);
  }
  return {std::move(u), std::move(v)};
}

Image colorize(const PlaneD& gray, const StrokeMap& strokes, const FilterParams& params) {
  auto [u, v] = diffuse_chroma(gray, strokes, params);
  return yuv_to_rgb(Image(std::vector<PlaneD>{gray, std::move(u), std::move(v)}));
}

}  // namespace snf::apps
