// Copyright 2026 The entmeter Authors
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

#ifndef ENTMETER_CLI_HPP
#define ENTMETER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace entmeter::cli {

// Exit codes: 0 success / member, 1 input error, 2 solver failure,
// 3 non-member.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitNonMember = 3;

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace entmeter::cli

#endif  // ENTMETER_CLI_HPP
