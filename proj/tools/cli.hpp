// Copyright 2026 The vidmix Authors. All rights reserved.
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

#ifndef VIDMIX_TOOLS_CLI_HPP_
#define VIDMIX_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace vidmix::cli {

/// Entry point of the `vidmix` tool. `args` excludes the program name.
/// Failures print one JSON error line to `err` and return non-zero.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace vidmix::cli

#endif  // VIDMIX_TOOLS_CLI_HPP_
