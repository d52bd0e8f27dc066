// Copyright 2026 The typlab Authors
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

#include <chrono>
#include <string>
#include <vector>

#include "typlab/harness.hpp"

namespace typlab::detail {

using Clock = std::chrono::steady_clock;

/// Records for one experiment; appends written data files (relative names).
std::vector<TrialRecord> experiment_records(const ExperimentSpec &spec,
                                            std::vector<std::string> &data_files);
std::vector<TrialRecord> einselection_records(const ExperimentSpec &spec,
                                              std::vector<std::string> &data_files);

/// Summary, CSV persistence and hashing.
ExperimentResult finalize(const ExperimentSpec &spec, std::vector<TrialRecord> records,
                          std::vector<std::string> data_files, Clock::time_point start);

} // namespace typlab::detail
