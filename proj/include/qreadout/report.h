// Copyright 2026 The qreadout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREADOUT_REPORT_H
#define QREADOUT_REPORT_H

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "qreadout/estimation.h"
#include "qreadout/experiment.h"

namespace qreadout {

std::string_view phase_name(GcPhase phase);

/// Header `trial,step,ln_delta,phase,restarts`, one row per sample.
void write_trajectory_csv(std::ostream &out, std::span<const TrajectoryRecord> trials);
/// %.17g, so values round-trip exactly.
std::string format_double(double x);

/// Summary of a single ensemble. Speedup fields are null.
nlohmann::ordered_json run_summary(const ExperimentConfig &cfg, std::span<const TrajectoryRecord> trials);

/// Summary of a scheme-versus-baseline comparison, with the summary fields
/// plus a `detail` object holding both estimators.
nlohmann::ordered_json speedup_summary(
    const ExperimentConfig &scheme_cfg, const ExperimentConfig &baseline_cfg, const SpeedupReport &report);

/// Fills `cfg` from a JSON object whose keys are the long flag names with
/// dashes replaced by underscores.
void apply_config_json(const nlohmann::json &j, ExperimentConfig &cfg);

}  // namespace qreadout

#endif
