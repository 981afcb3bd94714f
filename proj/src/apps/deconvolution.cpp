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

// Non-blind deconvolution with a non-local sparse prior, by half-quadratic
// splitting. Dividing the objective by alpha = lambda/|N| gives
//
//   (1/alpha) ||k * I - obs||^2 + sum_o sum_i |v_o(i)|^p + beta sum_o ||v_o - D_o I||^2
//
// where D_o I = I - shift(I, o) for every non-zero window offset o. Every
// D_o is a circular convolution, so the I-step is a per-frequency division.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "snf/apps.hpp"
#include "snf/fft2.hpp"

namespace snf::apps {

Kernel::Kernel(PlaneD taps) : taps_(std::move(taps)) {
  if (taps_.rows() % 2 == 0 || taps_.cols() % 2 == 0)
    throw ParameterError("kernel dimensions must be odd");
  if ((taps_ < 0).any()) throw ParameterError("kernel taps must be non-negative");
  if (std::abs(taps_.sum() - 1.0) > 1e-9) throw ParameterError("kernel taps must sum to 1");
}

Kernel Kernel::normalized(PlaneD taps) {
  const double s = taps.sum();
  if (!(s > 0)) throw ParameterError("kernel has no positive mass");
  return Kernel(taps / s);
}

Kernel Kernel::gaussian(int size, double sigma) {
  if (size < 1 || size % 2 == 0) throw ParameterError("kernel size must be odd");
  PlaneD taps(size, size);
  const int c = size / 2;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      taps(y, x) = std::exp(-((y - c) * (y - c) + (x - c) * (x - c)) / (2 * sigma * sigma));
  return normalized(std::move(taps));
}

Kernel Kernel::identity() { return Kernel(PlaneD::Ones(1, 1)); }

Kernel Kernel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open kernel file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) throw FormatError("non-numeric entry in kernel file '" + path + "'");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("empty kernel file '" + path + "'");
  PlaneD taps(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != rows[0].size()) throw FormatError("ragged kernel file '" + path + "'");
    for (size_t x = 0; x < rows[y].size(); ++x)
      taps(static_cast<Index>(y), static_cast<Index>(x)) = rows[y][x];
  }
  return normalized(std::move(taps));
}

std::vector<double> default_beta_schedule() {
  std::vector<double> b;
  for (int e = 0; e <= 8; ++e) b.push_back(std::ldexp(1.0, e));
  return b;
}

double shrink_lp(double d, double beta, double alpha, double p) {
  if (alpha == 0 || d == 0) return d;
  const double a = std::abs(d);
  const double sgn = d < 0 ? -1.0 : 1.0;
  if (p == 2) return beta * d / (beta + alpha);
  if (p == 1) return sgn * std::max(a - alpha / (2 * beta), 0.0);

  auto deriv = [&](double v) { return 2 * beta * (v - a) + alpha * p * std::pow(v, p - 1); };
  double lo = 0;
  if (p < 1) {
    // f is concave below the inflection point and convex above it.
    const double infl = std::pow(alpha * p * (1 - p) / (2 * beta), 1 / (2 - p));
    if (infl >= a || deriv(infl) >= 0) return 0.0;
    lo = infl;
  }
  // deriv is increasing on [lo, a], negative at lo (or at 0+ when p > 1)
  // and positive at a.
  double hi = a, v = a;
  for (int it = 0; it < 100; ++it) {
    const double g = deriv(v);
    if (g > 0) hi = v; else lo = v;
    const double curv = 2 * beta + alpha * p * (p - 1) * std::pow(v, p - 2);
    double next = v - g / curv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - v) <= 1e-15 * (1 + a)) {
      v = next;
      break;
    }
    v = next;
  }
  if (p < 1) {
    const double fv = beta * (v - a) * (v - a) + alpha * std::pow(v, p);
    if (fv >= beta * a * a) return 0.0;
  }
  return sgn * v;
}

namespace {

// Tabulated d -> shrink_lp(d) on [-range, range] for one (beta, alpha, p).
class ShrinkTable {
 public:
  ShrinkTable(double beta, double alpha, double p, double range, int samples)
      : beta_(beta), alpha_(alpha), p_(p), range_(range), step_(range / samples),
        table_(static_cast<size_t>(2 * samples + 1)) {
    for (int i = 0; i <= 2 * samples; ++i)
      table_[static_cast<size_t>(i)] = shrink_lp(-range + i * step_, beta, alpha, p);
  }

  double operator()(double d) const {
    if (std::abs(d) >= range_) return shrink_lp(d, beta_, alpha_, p_);
    const double pos = (d + range_) / step_;
    const size_t i = static_cast<size_t>(pos);
    const double t = pos - double(i);
    return (1 - t) * table_[i] + t * table_[i + 1];
  }

 private:
  double beta_, alpha_, p_, range_, step_;
  std::vector<double> table_;
};

}  // namespace

PlaneD deconvolve_snf(const PlaneD& obs, const Kernel& k, double lambda,
                      const FilterParams& params, std::span<const double> betas) {
  params.validate();
  if (lambda < 0) throw ParameterError("lambda must be >= 0");
  const Index h = obs.rows(), w = obs.cols();
  const ComplexPlane K = psf_to_otf(k.taps(), h, w);
  const PlaneD K2 = K.abs2();
  const ComplexPlane Kt_obs = K.conjugate() * fft2(obs);

  if (lambda == 0) {
    // No prior: regularized inverse filter.
    return ifft2_real(Kt_obs / (K2 + 1e-8).cast<std::complex<double>>());
  }

  const int r = params.radius;
  std::vector<std::pair<int, int>> offsets;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      if (dy != 0 || dx != 0) offsets.emplace_back(dy, dx);
  const double alpha = lambda / double((2 * r + 1) * (2 * r + 1));
  const double data_weight = 1.0 / alpha;

  PlaneD prior_otf = PlaneD::Zero(h, w);
  for (const auto& [dy, dx] : offsets) prior_otf += difference_otf(h, w, dy, dx).abs2();

  const std::vector<double> default_betas = default_beta_schedule();
  if (betas.empty()) betas = default_betas;

  PlaneD img = obs;
  PlaneD adjoint(h, w);
  for (const double beta : betas) {
    if (!(beta > 0)) throw ParameterError("beta schedule must be positive");
    const ShrinkTable shrink(beta, 1.0, params.p, 2.0, 20000);
    // v-step fused with accumulating sum_o D_o^T v_o.
    adjoint.setZero();
    for (const auto& [dy, dx] : offsets) {
      for (Index y = 0; y < h; ++y) {
        const Index ys = (y + dy + h) % h;
        for (Index x = 0; x < w; ++x) {
          const Index xs = (x + dx + w) % w;
          const double v = shrink(img(y, x) - img(ys, xs));
          adjoint(y, x) += v;
          adjoint(ys, xs) -= v;
        }
      }
    }
    // I-step.
    const ComplexPlane rhs = data_weight * Kt_obs + beta * fft2(adjoint);
    const PlaneD denom = data_weight * K2 + beta * prior_otf;
    img = ifft2_real(rhs / denom.cast<std::complex<double>>());
  }
  return img;
}

PlaneD deconvolve_tikhonov(const PlaneD& obs, const Kernel& k, double lambda) {
  if (lambda < 0) throw ParameterError("lambda must be >= 0");
  const Index h = obs.rows(), w = obs.cols();
  const ComplexPlane K = psf_to_otf(k.taps(), h, w);
  const PlaneD grad = difference_otf(h, w, 0, 1).abs2() + difference_otf(h, w, 1, 0).abs2();
  const PlaneD denom = K.abs2() + lambda * grad + (lambda == 0 ? 1e-8 : 0.0);
  return ifft2_real(K.conjugate() * fft2(obs) / denom.cast<std::complex<double>>());
}

PlaneD edge_taper(const PlaneD& obs, const Kernel& k) {
  const Index h = obs.rows(), w = obs.cols();
  const PlaneD blurred = circular_convolve(obs, k.taps());
  auto ramp = [](Index n, Index width) {
    Eigen::ArrayXd r = Eigen::ArrayXd::Ones(n);
    for (Index i = 0; i < n; ++i) {
      const Index dist = std::min(i, n - 1 - i);
      if (dist < width) r(i) = 0.5 - 0.5 * std::cos(M_PI * double(dist) / double(width));
    }
    return r;
  };
  const Eigen::ArrayXd wy = ramp(h, std::max<Index>(1, k.taps().rows()));
  const Eigen::ArrayXd wx = ramp(w, std::max<Index>(1, k.taps().cols()));
  PlaneD out(h, w);
  for (Index y = 0; y < h; ++y)
    for (Index x = 0; x < w; ++x) {
      const double a = wy(y) * wx(x);
      out(y, x) = a * obs(y, x) + (1 - a) * blurred(y, x);
    }
  return out;
}

}  // namespace snf::apps
