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

#ifndef SNF_BENCH_HPP_
#define SNF_BENCH_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace snf::bench {

struct Row {
  std::string op;
  long long npixels;
  int bins;
  int radius;
  double seconds;
};

struct Config {
  std::string op = "box";  // box | irls | bruteforce | direct
  std::vector<double> megapixels{1.0};
  int bins = 8;
  int radius = 5;
  int repetitions = 3;
  double p = 0.2;
  unsigned seed = 1;
};

/// Times `op` on random square images of each requested size; each row
/// reports the fastest of the repetitions.
std::vector<Row> run(const Config& cfg);

/// Seconds for one call of `op` on a random image of the given size.
double time_once(const std::string& op, long long side, int bins, int radius, double p,
                 unsigned seed);

void write_csv(std::ostream& os, const std::vector<Row>& rows);

/// Least-squares fit seconds = a + b * npixels; returns R^2.
double linear_fit_r2(const std::vector<Row>& rows);

}  // namespace snf::bench

#endif  // SNF_BENCH_HPP_
