// Copyright 2026 The qnm authors
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

#include "qnm/tolerances.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

#include "qnm/errors.hpp"

namespace qnm {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

namespace {

std::map<std::string, double Tolerances::*> tolerance_fields() {
  return {
      {"pure_norm", &Tolerances::pure_norm},
      {"trace_one", &Tolerances::trace_one},
      {"state_min_eig", &Tolerances::state_min_eig},
      {"hermiticity", &Tolerances::hermiticity},
      {"kraus_sum", &Tolerances::kraus_sum},
      {"projector_idem", &Tolerances::projector_idem},
      {"mixture_sum", &Tolerances::mixture_sum},
      {"zero_probability", &Tolerances::zero_probability},
      {"phase_equality", &Tolerances::phase_equality},
      {"qfi_rank_cutoff", &Tolerances::qfi_rank_cutoff},
      {"variance_floor", &Tolerances::variance_floor},
      {"singular_qfi", &Tolerances::singular_qfi},
      {"psd_gap", &Tolerances::psd_gap},
      {"decomposition_sum", &Tolerances::decomposition_sum},
      {"decomposition_psd", &Tolerances::decomposition_psd},
      {"zero_block", &Tolerances::zero_block},
      {"support_triviality", &Tolerances::support_triviality},
      {"fd_step", &Tolerances::fd_step},
      {"fi_fd_step", &Tolerances::fi_fd_step},
      {"degenerate_p", &Tolerances::degenerate_p},
      {"privacy_distance", &Tolerances::privacy_distance},
      {"trace_spread", &Tolerances::trace_spread},
  };
}

}  // namespace

void apply_tolerance_overrides(const std::string& spec) {
  if (spec.empty()) return;
  const auto fields = tolerance_fields();
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("tolerance override must be name=value, got: " + item);
    }
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    const auto it = fields.find(name);
    if (it == fields.end()) {
      throw ParseError("unknown tolerance name: " + name);
    }
    std::size_t consumed = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &consumed);
    } catch (const std::exception&) {
      throw ParseError("bad tolerance value for " + name + ": " + value);
    }
    if (consumed != value.size()) {
      throw ParseError("bad tolerance value for " + name + ": " + value);
    }
    tolerances().*(it->second) = parsed;
  }
}

void apply_tolerance_env() {
  const char* env = std::getenv("QNM_TOL");
  if (env != nullptr) apply_tolerance_overrides(env);
}

}  // namespace qnm
