// Copyright 2026 The riscf Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riscf::cli {

// Entry point behind the `riscf` executable. args excludes argv[0].
// Returns 0 on success, 2 on configuration/usage errors, 1 on runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Expands "a..b[:step]" (default step a) or "v1,v2,..." into a value list; a
// plain scalar yields a single value. Throws riscf::ConfigError naming `key`.
std::vector<double> parse_value_list(const std::string& key, const std::string& text);

}  // namespace riscf::cli
