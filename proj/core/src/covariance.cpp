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

#include "qnm/covariance.hpp"

#include <algorithm>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::metro {

using qcore::LabeledState;
using qcore::Matrix;
using qcore::Observable;
using qcore::QubitLabel;
using qcore::Vector;

namespace {

// Dense embedding of an operator into a full register (canonical order).
Matrix embed_full(const Matrix& a, const std::vector<QubitLabel>& reg,
                  const std::vector<QubitLabel>& support) {
  const int n = static_cast<int>(reg.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  return qcore::apply_embedded_left(a, Matrix::Identity(d, d), n,
                                    positions_in(reg, support));
}

}  // namespace

CovMatrix cov_matrix(const LabeledState& rho,
                     const std::vector<Observable>& observables) {
  if (observables.empty()) {
    throw InvalidSize("at least one observable is required");
  }
  const int m = static_cast<int>(observables.size());
  Matrix c(m, m);
  if (rho.is_pure()) {
    std::vector<Vector> images;
    std::vector<double> means;
    for (const auto& a : observables) {
      a.validate();
      const auto pos = rho.positions_of(a.support);
      images.push_back(qcore::apply_embedded(a.matrix, rho.amplitudes(),
                                             rho.qubit_count(), pos));
      means.push_back(rho.amplitudes().dot(images.back()).real());
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        c(i, j) = images[static_cast<std::size_t>(i)].dot(
                      images[static_cast<std::size_t>(j)]) -
                  means[static_cast<std::size_t>(i)] *
                      means[static_cast<std::size_t>(j)];
      }
    }
    return CovMatrix{std::move(c)};
  }
  std::vector<Matrix> products;  // A_j rho
  std::vector<double> means;
  for (const auto& a : observables) {
    a.validate();
    const auto pos = rho.positions_of(a.support);
    products.push_back(qcore::apply_embedded_left(a.matrix, rho.density(),
                                                  rho.qubit_count(), pos));
    means.push_back(products.back().trace().real());
  }
  for (int i = 0; i < m; ++i) {
    const auto pos = rho.positions_of(
        observables[static_cast<std::size_t>(i)].support);
    for (int j = 0; j < m; ++j) {
      const qcore::cdouble second =
          qcore::apply_embedded_left(
              observables[static_cast<std::size_t>(i)].matrix,
              products[static_cast<std::size_t>(j)], rho.qubit_count(), pos)
              .trace();
      c(i, j) = second - means[static_cast<std::size_t>(i)] *
                             means[static_cast<std::size_t>(j)];
    }
  }
  return CovMatrix{std::move(c)};
}

CovDecomposition cov_decompose(const std::vector<LabeledState>& subsystems,
                               const std::vector<Observable>& observables) {
  if (subsystems.empty()) {
    throw NotProductInput("at least one product factor is required");
  }
  if (observables.empty()) {
    throw InvalidSize("at least one observable is required");
  }
  const int kcount = static_cast<int>(subsystems.size());
  const int m = static_cast<int>(observables.size());

  // Combined register and its size guard; tensor() rejects overlap.
  int total_qubits = 0;
  for (const auto& s : subsystems) total_qubits += s.qubit_count();
  if (total_qubits > qcore::kMaxMixedQubits) {
    throw TooLarge("product of " + std::to_string(total_qubits) +
                   " qubits exceeds " +
                   std::to_string(qcore::kMaxMixedQubits));
  }

  // Suffix products rho_{k->} = rho_k x ... x rho_K, suffix[kcount] empty.
  std::vector<LabeledState> suffix(static_cast<std::size_t>(kcount) + 1,
                                   LabeledState::pure({}, Vector::Ones(1)));
  for (int k = kcount - 1; k >= 0; --k) {
    try {
      suffix[static_cast<std::size_t>(k)] =
          tensor(subsystems[static_cast<std::size_t>(k)],
                 suffix[static_cast<std::size_t>(k) + 1]);
    } catch (const LabelMismatch&) {
      throw NotProductInput("product factors share a qubit label");
    }
  }
  const LabeledState& full = suffix[0];

  CovDecomposition out;
  out.total = cov_matrix(full, observables);

  // Dense operators on the current remaining register, starting from the
  // full embedding A_i^{(0)}.
  std::vector<QubitLabel> rest_reg = full.reg();
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (const auto& a : observables) {
    a.validate();
    ops.push_back(embed_full(a.matrix, rest_reg, a.support));
  }

  for (int k = 0; k < kcount; ++k) {
    const LabeledState& factor = subsystems[static_cast<std::size_t>(k)];
    const int n_prev = static_cast<int>(rest_reg.size());
    const auto factor_pos = positions_in(rest_reg, factor.reg());

    // Remaining register after tracing out this factor, and where its
    // qubits sit inside the current one.
    std::vector<QubitLabel> next_reg;
    std::vector<int> next_pos;
    for (int p = 0; p < n_prev; ++p) {
      if (std::find(factor_pos.begin(), factor_pos.end(), p) ==
          factor_pos.end()) {
        next_reg.push_back(rest_reg[static_cast<std::size_t>(p)]);
        next_pos.push_back(p);
      }
    }

    // A_i^{(k)} = tr_k(A_i^{(k-1)} (rho_k x 1)).
    const Matrix factor_rho = factor.to_density();
    std::vector<Matrix> next_ops;
    next_ops.reserve(static_cast<std::size_t>(m));
    for (const auto& op : ops) {
      const Matrix weighted = qcore::apply_embedded_right(
          factor_rho, op, n_prev, factor_pos);
      next_ops.push_back(qcore::ptrace_operator(weighted, n_prev, next_pos));
    }

    // B_i = A_i^{(k-1)} - 1_k x A_i^{(k)} on the current register.
    const Eigen::Index d_prev = Eigen::Index{1} << n_prev;
    std::vector<Matrix> deltas;
    deltas.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const Matrix lifted = qcore::apply_embedded_left(
          next_ops[static_cast<std::size_t>(i)],
          Matrix::Identity(d_prev, d_prev), n_prev, next_pos);
      deltas.push_back(ops[static_cast<std::size_t>(i)] - lifted);
    }

    // Upsilon^{(k)}_{ij} = tr(B_i B_j rho_{k->}).
    const Matrix rest_rho = suffix[static_cast<std::size_t>(k)].to_density();
    std::vector<Matrix> weighted;  // B_j rho_{k->}
    weighted.reserve(static_cast<std::size_t>(m));
    for (const auto& b : deltas) weighted.push_back(b * rest_rho);
    Matrix part(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        part(i, j) = (deltas[static_cast<std::size_t>(i)].array() *
                      weighted[static_cast<std::size_t>(j)]
                          .transpose()
                          .array())
                         .sum();
      }
    }
    out.parts.push_back(std::move(part));

    ops = std::move(next_ops);
    rest_reg = std::move(next_reg);
  }
  return out;
}

}  // namespace qnm::metro
