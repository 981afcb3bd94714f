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

#include "snf/image.hpp"
#include "test_support.hpp"

using namespace snf;

TEST_CASE("image stores width * height * channels values") {
  Image img(7, 5, 3);
  CHECK(img.width() == 7);
  CHECK(img.height() == 5);
  CHECK(img.channels() == 3);
  CHECK(img.size() == 7 * 5 * 3);
  CHECK(img.channel(2).rows() == 5);
  CHECK_THROWS_AS(Image(0, 5, 1), ShapeError);
  CHECK_THROWS_AS(Image(4, 4, 2), ShapeError);
  CHECK_THROWS_AS(Image(std::vector<PlaneD>{PlaneD::Zero(2, 2), PlaneD::Zero(2, 3),
                                            PlaneD::Zero(2, 2)}),
                  ShapeError);
}

TEST_CASE("clamped01 bounds every channel") {
  Image img(std::vector<PlaneD>{PlaneD::Constant(2, 2, -0.2), PlaneD::Constant(2, 2, 0.4),
                                PlaneD::Constant(2, 2, 1.7)});
  const Image c = clamped01(img);
  CHECK(c(0, 0, 0) == 0.0);
  CHECK(c(1, 1, 1) == 0.4);
  CHECK(c(0, 1, 2) == 1.0);
}

TEST_CASE("gray maps to luma with zero chroma") {
  for (double v : {0.0, 0.25, 0.8, 1.0}) {
    Image img(std::vector<PlaneD>{PlaneD::Constant(3, 3, v), PlaneD::Constant(3, 3, v),
                                  PlaneD::Constant(3, 3, v)});
    const Image yuv = rgb_to_yuv(img);
    CHECK(yuv(1, 1, 0) == doctest::Approx(v).epsilon(1e-12));
    CHECK(std::abs(yuv(1, 1, 1)) < 1e-12);
    CHECK(std::abs(yuv(1, 1, 2)) < 1e-12);
  }
}

TEST_CASE("pure red has the BT.601 red luma coefficient") {
  Image img(std::vector<PlaneD>{PlaneD::Ones(1, 1), PlaneD::Zero(1, 1), PlaneD::Zero(1, 1)});
  CHECK(rgb_to_yuv(img)(0, 0, 0) == doctest::Approx(0.299).epsilon(1e-15));
}

TEST_CASE("yuv round trip is exact to 1e-6") {
  std::vector<PlaneD> planes;
  for (unsigned c = 0; c < 3; ++c) planes.push_back(testing::random_plane(16, 16, 10 + c));
  const Image rgb(planes);
  const Image back = yuv_to_rgb(rgb_to_yuv(rgb));
  for (int c = 0; c < 3; ++c) CHECK(testing::max_abs_diff(back.channel(c), rgb.channel(c)) < 1e-6);
}

TEST_CASE("color transforms reject grayscale input") {
  Image gray(4, 4, 1);
  CHECK_THROWS_AS(rgb_to_yuv(gray), ShapeError);
  CHECK_THROWS_AS(yuv_to_rgb(gray), ShapeError);
}

TEST_CASE("quantization grids") {
  SUBCASE("B = 2 holds the endpoints") {
    const QuantGrid g = make_quant_grid(2);
    CHECK(g.size() == 2);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 1.0);
  }
  SUBCASE("B = 5 is uniform") {
    const QuantGrid g = make_quant_grid(5);
    const double expected[] = {0, 0.25, 0.5, 0.75, 1};
    for (int b = 0; b < 5; ++b) CHECK(g[b] == expected[b]);
    CHECK(g.uniform());
  }
  SUBCASE("B = 256 contains every 8-bit level exactly") {
    const QuantGrid g = make_quant_grid(256);
    for (int k = 0; k < 256; ++k) CHECK(g[k] == k / 255.0);
  }
  SUBCASE("invalid grids") {
    CHECK_THROWS_AS(make_quant_grid(1), ParameterError);
    CHECK_THROWS_AS(QuantGrid({0.0, 0.5, 0.5}), ParameterError);
    CHECK_THROWS_AS(make_quant_grid(4, 1.0, 1.0), ParameterError);
  }
  SUBCASE("ranged grid hits both endpoints") {
    const QuantGrid g = make_quant_grid(7, -2.0, 3.0);
    CHECK(g.front() == -2.0);
    CHECK(g.back() == 3.0);
  }
}

TEST_CASE("locate brackets values and snaps onto centres") {
  const QuantGrid g = make_quant_grid(5);
  auto [lo, t] = g.locate(0.3);
  CHECK(lo == 1);
  CHECK(t == doctest::Approx(0.2));
  std::tie(lo, t) = g.locate(0.5);
  CHECK(lo == 2);
  CHECK(t == 0.0);
  std::tie(lo, t) = g.locate(1.0);
  CHECK(lo == 3);
  CHECK(t == 1.0);
  std::tie(lo, t) = g.locate(-0.5);
  CHECK(lo == 0);
  CHECK(t == 0.0);

  const QuantGrid g256 = make_quant_grid(256);
  for (int k = 0; k < 255; ++k) {
    std::tie(lo, t) = g256.locate(k / 255.0);
    CHECK(lo == k);
    CHECK(t == 0.0);
  }

  const QuantGrid irregular({0.0, 0.1, 0.7, 1.0});
  CHECK_FALSE(irregular.uniform());
  std::tie(lo, t) = irregular.locate(0.4);
  CHECK(lo == 1);
  CHECK(t == doctest::Approx(0.5));
}

TEST_CASE("filter params validation") {
  FilterParams fp;
  CHECK_NOTHROW(fp.validate());
  fp.p = 0;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
  fp = FilterParams{};
  fp.p = 2.5;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
  fp = FilterParams{};
  fp.radius = 0;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
  fp = FilterParams{};
  fp.bins = 1;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
  fp = FilterParams{};
  fp.eps = 0;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
  fp = FilterParams{};
  fp.iterations = 0;
  CHECK_THROWS_AS(fp.validate(), ParameterError);
}
