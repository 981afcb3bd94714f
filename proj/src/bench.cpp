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

#include "snf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>

#include "snf/box_filter.hpp"
#include "snf/sparse_norm_filter.hpp"

namespace snf::bench {

double time_once(const std::string& op, long long side, int bins, int radius, double p,
                 unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  PlaneD img(side, side);
  for (Index i = 0; i < img.size(); ++i) img.data()[i] = uni(rng);

  FilterParams fp;
  fp.p = p;
  fp.radius = radius;
  fp.bins = bins;

  const auto t0 = std::chrono::steady_clock::now();
  PlaneD out;
  if (op == "box") {
    out = box_mean(img, radius);
  } else if (op == "irls") {
    out = snf_irls_quantized(img, fp);
  } else if (op == "bruteforce") {
    out = snf_bruteforce(img, fp);
  } else if (op == "direct") {
    out = snf_irls_direct(img, fp);
  } else {
    throw ParameterError("unknown benchmark op '" + op + "'");
  }
  const auto t1 = std::chrono::steady_clock::now();
  // Keep the result observable.
  volatile double sink = out(0, 0);
  (void)sink;
  return std::chrono::duration<double>(t1 - t0).count();
}

std::vector<Row> run(const Config& cfg) {
  if (cfg.repetitions < 1) throw ParameterError("repetitions must be >= 1");
  std::vector<Row> rows;
  for (const double mp : cfg.megapixels) {
    if (!(mp > 0)) throw ParameterError("benchmark sizes must be positive");
    const long long side = std::max<long long>(1, std::llround(std::sqrt(mp * 1e6)));
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < cfg.repetitions; ++rep)
      best = std::min(best, time_once(cfg.op, side, cfg.bins, cfg.radius, cfg.p, cfg.seed + rep));
    rows.push_back({cfg.op, side * side, cfg.bins, cfg.radius, best});
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << "op,npixels,B,r,seconds\n";
  for (const auto& r : rows)
    os << r.op << ',' << r.npixels << ',' << r.bins << ',' << r.radius << ',' << r.seconds << '\n';
}

double linear_fit_r2(const std::vector<Row>& rows) {
  if (rows.size() < 2) return 1.0;
  Eigen::MatrixXd a(static_cast<Index>(rows.size()), 2);
  Eigen::VectorXd b(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    a(static_cast<Index>(i), 0) = 1.0;
    a(static_cast<Index>(i), 1) = double(rows[i].npixels);
    b(static_cast<Index>(i)) = rows[i].seconds;
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  const double ss_res = (a * coef - b).squaredNorm();
  const double ss_tot = (b.array() - b.mean()).matrix().squaredNorm();
  return ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace snf::bench
