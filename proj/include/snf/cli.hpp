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

#ifndef SNF_CLI_HPP_
#define SNF_CLI_HPP_

#include <string>
#include <vector>

namespace snf::cli {

/// Runs the command-line driver. Returns 0 on success, 1 on processing
/// errors and 2 on invalid arguments.
int run(int argc, const char* const* argv);

int run(const std::vector<std::string>& args);

}  // namespace snf::cli

#endif  // SNF_CLI_HPP_
