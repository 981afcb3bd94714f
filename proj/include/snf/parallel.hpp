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

#ifndef SNF_PARALLEL_HPP_
#define SNF_PARALLEL_HPP_

#include <Eigen/Core>

#ifdef SNF_HAVE_OPENMP
#include <omp.h>
#endif

namespace snf {

// Caps the worker count used by data-parallel row loops. Values < 1 restore
// the runtime default. Every parallel loop writes disjoint rows, so output is
// identical for any thread count.
inline void set_num_threads(int n) {
#ifdef SNF_HAVE_OPENMP
  omp_set_num_threads(n < 1 ? omp_get_num_procs() : n);
#else
  (void)n;
#endif
}

inline int num_threads() {
#ifdef SNF_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs body(row) for row in [0, rows).
template <typename Body>
void parallel_rows(Eigen::Index rows, Body&& body) {
#ifdef SNF_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (Eigen::Index y = 0; y < rows; ++y) body(y);
#else
  for (Eigen::Index y = 0; y < rows; ++y) body(y);
#endif
}

}  // namespace snf

#endif  // SNF_PARALLEL_HPP_
