// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hwmimo Authors
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

#pragma once

#include "run/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hwmimo {

struct Output
{
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> files; // name, contents
};

std::vector<std::string> command_names();

/// Runs one command. Defaults are written back into `cfg`, so afterwards it
/// describes the run completely.
Output run_command(const std::string &command, json &cfg, int threads);

/// Mean and standard error of the mean.
std::pair<double, double> mean_se(const std::vector<double> &v);

} // namespace hwmimo
