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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "snf/box_filter.hpp"
#include "snf/oracles.hpp"
#include "snf/sparse_norm_filter.hpp"
#include "test_support.hpp"

using namespace snf;

namespace {

FilterParams params(double p, int r, int bins = 16) {
  FilterParams fp;
  fp.p = p;
  fp.radius = r;
  fp.bins = bins;
  return fp;
}

PlaneD row(std::initializer_list<double> v) {
  PlaneD p(1, static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) p(0, i++) = x;
  return p;
}

// Smoothed window energy sum_j ((v - I_j)^2 + eps^2)^(p/2).
double smoothed_energy(const PlaneD& img, Index y, Index x, double v, double p, int r, double eps) {
  double e = 0;
  for (Index j = std::max<Index>(0, y - r); j <= std::min<Index>(img.rows() - 1, y + r); ++j)
    for (Index i = std::max<Index>(0, x - r); i <= std::min<Index>(img.cols() - 1, x + r); ++i)
      e += std::pow((v - img(j, i)) * (v - img(j, i)) + eps * eps, 0.5 * p);
  return e;
}

bool within_window_range(const PlaneD& in, const PlaneD& out, int r, double slack) {
  for (Index y = 0; y < in.rows(); ++y)
    for (Index x = 0; x < in.cols(); ++x) {
      const Index y0 = std::max<Index>(0, y - r), x0 = std::max<Index>(0, x - r);
      const Index ny = std::min<Index>(in.rows(), y + r + 1) - y0;
      const Index nx = std::min<Index>(in.cols(), x + r + 1) - x0;
      const auto win = in.block(y0, x0, ny, nx);
      if (out(y, x) < win.minCoeff() - slack || out(y, x) > win.maxCoeff() + slack) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("weight function values") {
  CHECK(snf_weight(0.37, 2.0, 1.0 / 255) == 1.0);
  CHECK(snf_weight(0.5, 0.2, 1e-12) == doctest::Approx(3.4822).epsilon(1e-4));
  const double w0 = snf_weight(0.0, 0.2, 1.0 / 255);
  CHECK(w0 == doctest::Approx(std::pow(255.0, 1.8)).epsilon(1e-12));
  CHECK(w0 == doctest::Approx(2.15e4).epsilon(5e-3));
  CHECK(snf_weight(3.0, 0.05, 1.0 / 255) > 0);
  CHECK(snf_weight(0.1f, 1.0, 0.01) == doctest::Approx(std::pow(0.0101, -0.5)).epsilon(1e-6));
}

TEST_CASE("direct IRLS on a three-pixel row") {
  const PlaneD img = row({0.5, 0.5, 1.0});
  const double eps = 1.0 / 255;
  const double same = std::pow(eps * eps, -0.9), cross = std::pow(0.25 + eps * eps, -0.9);
  const double expected = (2 * same * 0.5 + cross * 1.0) / (2 * same + cross);
  const PlaneD out = snf_irls_direct(img, params(0.2, 1));
  CHECK(out(0, 1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(out(0, 1) == doctest::Approx(0.50004).epsilon(1e-5));
}

TEST_CASE("p = 2 reduces every IRLS path to the box mean") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const PlaneD img = testing::random_plane(24, 31, seed);
    const PlaneD box = box_mean(img, 3);
    CHECK(testing::max_abs_diff(snf_irls_direct(img, params(2, 3)), box) < 1e-9);
    for (int bins : {2, 7, 64})
      CHECK(testing::max_abs_diff(snf_irls_quantized(img, params(2, 3, bins)), box) < 1e-9);
    CHECK(testing::max_abs_diff(snf::snf(img, params(2, 3)), box) < 1e-9);
  }
}

TEST_CASE("constant images pass through unchanged") {
  const PlaneD img = PlaneD::Constant(17, 13, 0.42);
  for (double p : {0.05, 0.2, 1.0, 1.5, 2.0}) {
    CHECK(testing::max_abs_diff(snf_irls_direct(img, params(p, 4)), img) < 1e-12);
    CHECK(testing::max_abs_diff(snf_irls_quantized(img, params(p, 4)), img) < 1e-12);
  }
}

TEST_CASE("IRLS outputs stay inside the window range") {
  for (unsigned seed = 0; seed < 4; ++seed) {
    const PlaneD img = testing::random_plane(20, 20, 10 + seed);
    const PlaneD guide = testing::random_plane(20, 20, 50 + seed);
    for (double p : {0.1, 0.8, 1.6}) {
      CHECK(within_window_range(img, snf_irls_direct(img, params(p, 2)), 2, 1e-12));
      CHECK(within_window_range(img, snf_irls_direct(img, guide, params(p, 2)), 2, 1e-12));
      CHECK(within_window_range(img, snf_irls_quantized(img, params(p, 2, 8)), 2, 1e-12));
    }
  }
}

TEST_CASE("quantized IRLS matches the direct path on 8-bit data with 256 bins") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const PlaneD img = testing::random_8bit_plane(32, 32, 20 + seed);
    for (double p : {0.2, 1.0}) {
      const FilterParams fp = params(p, 3, 256);
      CHECK(testing::max_abs_diff(snf_irls_quantized(img, fp), snf_irls_direct(img, fp)) < 1e-6);
    }
  }
}

TEST_CASE("quantized IRLS interpolates between bracketing bins") {
  // With two bins every pixel blends the two bin quotients linearly.
  const PlaneD img = row({0.0, 0.25, 1.0});
  const FilterParams fp = params(0.5, 1, 2);
  const PlaneD out = snf_irls_quantized(img, fp);
  auto quotient = [&](double q, Index x) {
    double num = 0, den = 0;
    for (Index j = std::max<Index>(0, x - 1); j <= std::min<Index>(2, x + 1); ++j) {
      const double w = std::pow((q - img(0, j)) * (q - img(0, j)) + fp.eps * fp.eps, -0.75);
      num += w * img(0, j);
      den += w;
    }
    return num / den;
  };
  for (Index x = 0; x < 3; ++x) {
    const double t = img(0, x);
    CHECK(out(0, x) == doctest::Approx((1 - t) * quotient(0.0, x) + t * quotient(1.0, x)).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation") {
  const PlaneD img = testing::random_plane(8, 8, 1);
  CHECK_THROWS_AS(snf_irls_quantized(img, params(0.2, 2, 1)), ParameterError);
  CHECK_THROWS_AS(snf_irls_direct(img, params(0.0, 2)), ParameterError);
  CHECK_THROWS_AS(snf_irls_direct(img, params(2.5, 2)), ParameterError);
  CHECK_THROWS_AS(snf_irls_direct(img, PlaneD(testing::random_plane(8, 9, 1)), params(1, 2)),
                  ShapeError);
  FilterParams spatial = params(1, 2);
  spatial.spatial_sigma = 2;
  CHECK_THROWS_AS(snf_irls_quantized(img, spatial), ParameterError);
}

TEST_CASE("brute force picks the median, the mean and the mode") {
  const QuantGrid grid({0.0, 0.1, 0.2, 0.3, 0.4, 0.7, 0.9, 1.0});
  CHECK(snf_bruteforce(row({0.1, 0.2, 0.9}), params(1, 1), grid)(0, 1) == 0.2);
  CHECK(snf_bruteforce(row({0.1, 0.2, 0.9}), params(2, 1), grid)(0, 1) == 0.4);
  CHECK(snf_bruteforce(row({0.3, 0.3, 0.7}), params(0.05, 1), grid)(0, 1) == 0.3);
}

TEST_CASE("brute force breaks ties toward the lowest bin") {
  // Every candidate in [0,1] has l1 energy exactly 1 over the window {0, 1}.
  const PlaneD out = snf_bruteforce(row({0.0, 1.0}), params(1, 1), QuantGrid({0.0, 0.5, 1.0}));
  CHECK(out(0, 0) == 0.0);
  CHECK(out(0, 1) == 0.0);
}

TEST_CASE("brute force returns a strict-majority value for tiny p") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    // Background 0.6 with sparse impulses: every 3x3 window has a strict majority.
    PlaneD img = PlaneD::Constant(16, 16, 0.6);
    std::mt19937 rng(seed);
    for (Index y = 0; y < 16; y += 4)
      for (Index x = 0; x < 16; x += 4) img(y + rng() % 4, x + rng() % 4) = (rng() % 2) ? 0.0 : 1.0;
    const PlaneD out = snf_bruteforce(img, params(0.05, 1, 256));
    CHECK((out == std::round(0.6 * 255) / 255).all());
  }
}

TEST_CASE("brute force achieves the grid minimum of the window energy") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const PlaneD img = testing::random_plane(12, 12, 30 + seed);
    for (double p : {0.3, 1.0, 1.7}) {
      const FilterParams fp = params(p, 2, 16);
      const QuantGrid grid = make_quant_grid(16);
      const PlaneD out = snf_bruteforce(img, fp);
      for (Index y = 0; y < 12; ++y)
        for (Index x = 0; x < 12; ++x) {
          CHECK(out(y, x) == oracles::grid_argmin(img, y, x, grid, p, 2));
        }
    }
  }
}

TEST_CASE("brute force with p = 1 and 256 bins is the median filter") {
  const PlaneD img = testing::random_8bit_plane(20, 20, 41);
  const PlaneD out = snf_bruteforce(img, params(1, 2, 256));
  const PlaneD med = oracles::median_filter(img, 2);
  // Interior windows hold 25 values, so the median is the unique l1 minimizer.
  CHECK(testing::max_abs_diff(out.block(2, 2, 16, 16), med.block(2, 2, 16, 16)) < 1e-12);
}

TEST_CASE("dispatcher") {
  const PlaneD img = testing::random_plane(20, 25, 3);
  FilterParams fp = params(0.4, 3, 12);
  CHECK((snf::snf(img, fp) == snf_irls_quantized(img, fp)).all());

  fp.strategy = Strategy::kBruteForce;
  CHECK((snf::snf(img, fp) == snf_bruteforce(img, fp)).all());

  FilterParams twice = params(2, 2);
  twice.iterations = 2;
  CHECK(testing::max_abs_diff(snf::snf(img, twice), box_mean(box_mean(img, 2), 2)) < 1e-9);

  FilterParams spatial = params(0.7, 2);
  spatial.spatial_sigma = 1.5;
  CHECK((snf::snf(img, spatial) == snf_irls_direct(img, spatial)).all());

  const PlaneD guide = testing::random_plane(20, 25, 4);
  FilterParams guided = params(0.4, 3, 12);
  guided.iterations = 2;
  const PlaneD once = snf_irls_quantized(img, guide, guided);
  CHECK(testing::max_abs_diff(snf::snf(img, guide, guided), snf_irls_quantized(once, guide, guided)) < 1e-15);
}

TEST_CASE("step edges survive without halos") {
  const PlaneD step = testing::step_plane(64, 64);
  FilterParams fp = params(0.05, 16, 16);
  CHECK(testing::max_abs_diff(snf::snf(step, fp), step) < 0.01);
  CHECK(testing::max_abs_diff(snf_irls_direct(step, fp), step) < 0.01);
  fp.strategy = Strategy::kBruteForce;
  CHECK(testing::max_abs_diff(snf::snf(step, fp), step) < 0.01);
  CHECK(testing::max_abs_diff(box_mean(step, 16), step) > 0.3);
}

TEST_CASE("one IRLS step does not increase the smoothed energy") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const PlaneD img = testing::random_plane(16, 16, 60 + seed);
    for (double p : {0.3, 1.0, 1.8}) {
      const FilterParams fp = params(p, 2);
      const PlaneD out = snf_irls_direct(img, fp);
      for (Index y = 0; y < 16; ++y)
        for (Index x = 0; x < 16; ++x)
          CHECK(smoothed_energy(img, y, x, out(y, x), p, 2, fp.eps) <=
                smoothed_energy(img, y, x, img(y, x), p, 2, fp.eps) + 1e-9);
    }
  }
}

TEST_CASE("direct IRLS commutes with constant shifts") {
  const PlaneD img = testing::random_plane(18, 18, 7, 0.1, 0.9);
  const FilterParams fp = params(0.3, 3);
  const PlaneD base = snf_irls_direct(img, fp);
  for (double c : {-0.1, 0.05, 0.1})
    CHECK(testing::max_abs_diff(snf_irls_direct(PlaneD(img + c), fp), PlaneD(base + c)) < 1e-9);
}

TEST_CASE("flips and transposition commute with filtering") {
  const PlaneD img = testing::random_8bit_plane(21, 21, 8);
  using testing::flip_lr, testing::flip_ud, testing::transpose;
  const FilterParams fp = params(0.3, 3, 32);
  FilterParams bf = fp;
  bf.strategy = Strategy::kBruteForce;

  // Brute force returns grid values, so equality is exact.
  const PlaneD b = snf::snf(img, bf);
  CHECK((snf::snf(flip_lr(img), bf) == flip_lr(b)).all());
  CHECK((snf::snf(flip_ud(img), bf) == flip_ud(b)).all());
  CHECK((snf::snf(transpose(img), bf) == transpose(b)).all());

  // Weighted sums are accumulated in a different order after a flip.
  const PlaneD q = snf::snf(img, fp);
  CHECK(testing::max_abs_diff(snf::snf(flip_lr(img), fp), flip_lr(q)) < 1e-12);
  CHECK(testing::max_abs_diff(snf::snf(flip_ud(img), fp), flip_ud(q)) < 1e-12);
  CHECK(testing::max_abs_diff(snf::snf(transpose(img), fp), transpose(q)) < 1e-12);

  // Dyadic values with p = 2 keep every partial sum exact.
  const PlaneD d = testing::random_dyadic_plane(21, 21, 9);
  CHECK((snf_irls_direct(flip_lr(d), params(2, 3)) == flip_lr(snf_irls_direct(d, params(2, 3)))).all());
}

TEST_CASE("results do not depend on the thread count") {
  const PlaneD img = testing::random_plane(40, 40, 11);
  const FilterParams fp = params(0.2, 4, 16);
  set_num_threads(1);
  const PlaneD one = snf::snf(img, fp);
  set_num_threads(4);
  const PlaneD four = snf::snf(img, fp);
  set_num_threads(0);
  CHECK((one == four).all());
}

TEST_CASE("single precision instantiation") {
  const PlaneD img = testing::random_plane(32, 32, 12);
  const PlaneF imgf = img.cast<float>();
  const FilterParams fp = params(0.5, 3, 16);
  const PlaneF out = snf::snf(imgf, fp);
  CHECK((out.cast<double>() - snf::snf(PlaneD(imgf.cast<double>()), fp)).abs().maxCoeff() < 1e-5);
  const PlaneF direct = snf_irls_direct(imgf, fp);
  CHECK((direct.cast<double>() - snf_irls_direct(PlaneD(imgf.cast<double>()), fp)).abs().maxCoeff() < 1e-5);
}

TEST_CASE("colour images") {
  std::vector<PlaneD> gray(3, testing::random_plane(16, 16, 13));
  const Image img(gray);
  const FilterParams fp = params(0.3, 2);
  const Image luma_out = snf::snf(img, nullptr, fp, ColorPolicy::kLuma);
  for (int c = 1; c < 3; ++c) CHECK(testing::max_abs_diff(luma_out.channel(c), luma_out.channel(0)) < 1e-9);
  CHECK(testing::max_abs_diff(luma_out.channel(0), snf::snf(gray[0], fp)) < 1e-9);

  const Image per = snf::snf(img, nullptr, fp, ColorPolicy::kPerChannel);
  CHECK((per.channel(2) == snf::snf(gray[0], fp)).all());

  const Image guide(testing::random_plane(16, 16, 14));
  const Image guided = snf::snf(img, &guide, fp, ColorPolicy::kPerChannel);
  CHECK((guided.channel(1) == snf::snf(gray[0], guide.channel(0), fp)).all());
  const Image wrong(testing::random_plane(16, 17, 14));
  CHECK_THROWS_AS(snf::snf(img, &wrong, fp), ShapeError);
}
