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

#include "qnm/labels.hpp"

#include <algorithm>
#include <cstdio>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::qcore {

std::string QubitLabel::to_string() const {
  char buf[64];
  if (kind == Kind::kSource) {
    std::snprintf(buf, sizeof buf, "[%d,%d]", a, b);
  } else {
    std::snprintf(buf, sizeof buf, "a(%d,%d)", a, b);
  }
  return buf;
}

QubitLabel QubitLabel::from_string(const std::string& text) {
  int x = 0, y = 0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "[%d,%d%c", &x, &y, &tail) == 3 &&
      tail == ']') {
    return QubitLabel::source(x, y);
  }
  if (std::sscanf(text.c_str(), "a(%d,%d%c", &x, &y, &tail) == 3 &&
      tail == ')') {
    return QubitLabel::ancilla(x, y);
  }
  throw ParseError("unparseable qubit label: " + text);
}

namespace {

bool dims_match(const Eigen::MatrixXcd& m, int n_qubits) {
  const Eigen::Index want = Eigen::Index{1} << n_qubits;
  return m.rows() == want && m.cols() == want;
}

}  // namespace

void Observable::validate() const {
  // An empty support is allowed: the 1x1 matrix acts as a scalar constant
  // (the natural generator of a signal with no incident source qubits).
  require_unique(support);
  if (!dims_match(matrix, qubit_count())) {
    throw SupportMismatch("observable matrix dimension does not match 2^" +
                          std::to_string(qubit_count()));
  }
  const double defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tolerances().hermiticity) {
    throw BadDistribution("observable is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
}

void Gate::validate_unitary() const {
  require_unique(support);
  if (support.empty()) {
    throw SupportMismatch("gate needs a non-empty support");
  }
  if (!dims_match(matrix, qubit_count())) {
    throw SupportMismatch("gate matrix dimension does not match 2^" +
                          std::to_string(qubit_count()));
  }
  const Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
  const double defect =
      (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > tolerances().kraus_sum) {
    throw BadDistribution("gate is not unitary (defect " +
                          std::to_string(defect) + ")");
  }
}

void Channel::validate() const {
  require_unique(support);
  if (support.empty()) {
    throw SupportMismatch("channel needs a non-empty support");
  }
  if (kraus.empty()) {
    throw BadDistribution("channel needs at least one Kraus operator");
  }
  const Eigen::Index want = Eigen::Index{1} << qubit_count();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(want, want);
  for (const auto& k : kraus) {
    if (k.rows() != want || k.cols() != want) {
      throw SupportMismatch("Kraus operator dimension does not match 2^" +
                            std::to_string(qubit_count()));
    }
    sum += k.adjoint() * k;
  }
  const double defect =
      (sum - Eigen::MatrixXcd::Identity(want, want)).cwiseAbs().maxCoeff();
  if (defect > tolerances().kraus_sum) {
    throw BadDistribution("Kraus operators do not sum to identity (defect " +
                          std::to_string(defect) + ")");
  }
}

bool Channel::is_identity() const {
  if (kraus.size() != 1) return false;
  const Eigen::Index n = kraus[0].rows();
  return (kraus[0] - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <
         tolerances().kraus_sum;
}

void require_unique(const std::vector<QubitLabel>& reg) {
  std::vector<QubitLabel> sorted = reg;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw LabelMismatch("duplicate qubit label " + dup->to_string());
  }
}

bool is_canonical(const std::vector<QubitLabel>& reg) {
  for (std::size_t i = 1; i < reg.size(); ++i) {
    if (!(reg[i - 1] < reg[i])) return false;
  }
  return true;
}

std::vector<int> positions_in(const std::vector<QubitLabel>& reg,
                              const std::vector<QubitLabel>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& q : labels) {
    const auto it = std::lower_bound(reg.begin(), reg.end(), q);
    if (it == reg.end() || *it != q) {
      throw UnknownQubit("qubit " + q.to_string() + " not in register");
    }
    out.push_back(static_cast<int>(it - reg.begin()));
  }
  return out;
}

}  // namespace qnm::qcore
