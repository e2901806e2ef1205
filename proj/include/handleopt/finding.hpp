// Copyright 2026 The handleopt Authors
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

#ifndef HANDLEOPT_FINDING_HPP_
#define HANDLEOPT_FINDING_HPP_

#include <algorithm>
#include <string>
#include <vector>

namespace handleopt {

enum class Severity { kWarning, kError };

// One validation result. `code` names the violated rule (e.g. "mass_closure").
struct Finding {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
};

inline bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::kError; });
}

}  // namespace handleopt

#endif  // HANDLEOPT_FINDING_HPP_
