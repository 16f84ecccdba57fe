// Copyright 2026 The structprop Authors
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

// The structprop command line: detect, propagate, synth, verify, search and
// bench subcommands over MPS files. Data goes to `out`, logs and usage text
// to `err`.

#ifndef STRUCTPROP_TOOLS_CLI_HPP_
#define STRUCTPROP_TOOLS_CLI_HPP_

#include <ostream>

namespace structprop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace structprop::cli

#endif  // STRUCTPROP_TOOLS_CLI_HPP_
