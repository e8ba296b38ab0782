// SPDX-License-Identifier: Apache-2.0
//
// resbeam: resonant-beam SWIPT link simulator
// Copyright (C) 2026 The resbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RESBEAM_TOOLS_COMMANDS_HPP
#define RESBEAM_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace resbeam::cli
{
    // Process exit codes.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitError = 1;
    inline constexpr int kExitNotConverged = 2;
    inline constexpr int kExitPlanConflict = 3;

    // Environment variable holding the default output directory.
    inline constexpr const char *kOutDirEnv = "RESBEAM_OUT_DIR";

    // Entry point of the `resbeam` tool. `args` excludes the program name.
    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
