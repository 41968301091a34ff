// Copyright 2026 The qcad Authors
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

#include <functional>
#include <string>
#include <vector>

namespace qcad {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in invariant and oracle checks (Kraus completeness,
/// Lindblad/Kraus agreement, closed-form agreement, protocol bounds, ...).
/// `on_result` is called as each check finishes.
std::vector<CheckResult> run_verification(
    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace qcad
