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

#include "qnm/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::qcore {

namespace {

// Basis-index stride of register position k in an n-qubit register
// (position 0 is the most significant bit).
inline Eigen::Index stride_of(int n, int position) {
  return Eigen::Index{1} << (n - 1 - position);
}

// Enumerates the basis indices of all assignments over `positions`,
// relative to a base index: out[s] = base + sum_j bit_j(s) * stride_j,
// where bit 0 of s corresponds to the LAST listed position (so s itself
// reads as the bit pattern over the listed positions, first = most
// significant).  `positions` must be distinct.
struct SubsetIndexer {
  SubsetIndexer(int n_qubits, const std::vector<int>& positions)
      : n(n_qubits), m(static_cast<int>(positions.size())) {
    strides.reserve(positions.size());
    for (int p : positions) strides.push_back(stride_of(n, p));
    rest_positions.reserve(static_cast<std::size_t>(n - m));
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int p : positions) used[static_cast<std::size_t>(p)] = 1;
    for (int p = 0; p < n; ++p) {
      if (!used[static_cast<std::size_t>(p)]) {
        rest_positions.push_back(p);
      }
    }
  }

  // Basis index with support bits `s` (pattern over listed positions) and
  // rest bits `r` (pattern over the remaining positions, ascending).
  Eigen::Index index(Eigen::Index s, Eigen::Index r) const {
    Eigen::Index idx = 0;
    for (int j = 0; j < m; ++j) {
      if ((s >> (m - 1 - j)) & 1) idx += strides[static_cast<std::size_t>(j)];
    }
    const int rest = n - m;
    for (int j = 0; j < rest; ++j) {
      if ((r >> (rest - 1 - j)) & 1) {
        idx += stride_of(n, rest_positions[static_cast<std::size_t>(j)]);
      }
    }
    return idx;
  }

  Eigen::Index support_dim() const { return Eigen::Index{1} << m; }
  Eigen::Index rest_dim() const { return Eigen::Index{1} << (n - m); }

  int n;
  int m;
  std::vector<Eigen::Index> strides;
  std::vector<int> rest_positions;
};

void check_positions(int n, const std::vector<int>& positions) {
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int p : positions) {
    if (p < 0 || p >= n) {
      throw UnknownQubit("register position " + std::to_string(p) +
                         " out of range");
    }
    if (used[static_cast<std::size_t>(p)]++) {
      throw LabelMismatch("repeated register position " + std::to_string(p));
    }
  }
}

// Core kernel: y <- (A embedded at positions) x, operating in place on a
// contiguous array of 2^n amplitudes.
void kernel_apply(const Matrix& a, cdouble* data, int n,
                  const std::vector<int>& positions) {
  const SubsetIndexer ix(n, positions);
  const Eigen::Index d = ix.support_dim();
  if (a.rows() != d || a.cols() != d) {
    throw SupportMismatch("operator dimension does not match its support");
  }
  Vector in(d), out(d);
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d));
  for (Eigen::Index r = 0; r < ix.rest_dim(); ++r) {
    for (Eigen::Index s = 0; s < d; ++s) {
      idx[static_cast<std::size_t>(s)] = ix.index(s, r);
    }
    for (Eigen::Index s = 0; s < d; ++s) {
      in(s) = data[idx[static_cast<std::size_t>(s)]];
    }
    out.noalias() = a * in;
    for (Eigen::Index s = 0; s < d; ++s) {
      data[idx[static_cast<std::size_t>(s)]] = out(s);
    }
  }
}

std::vector<QubitLabel> sorted_copy(std::vector<QubitLabel> reg) {
  std::sort(reg.begin(), reg.end());
  return reg;
}

// Permutation that maps a register into canonical (sorted) order, as
// new-position-of-old-position.
std::vector<int> canonical_permutation(const std::vector<QubitLabel>& reg) {
  const int n = static_cast<int>(reg.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return reg[static_cast<std::size_t>(i)] <
                                       reg[static_cast<std::size_t>(j)]; });
  // order[k] = old position that lands at new position k; invert.
  std::vector<int> new_of_old(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    new_of_old[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
        k;
  }
  return new_of_old;
}

Eigen::Index permute_index(Eigen::Index idx, int n,
                           const std::vector<int>& new_of_old) {
  Eigen::Index out = 0;
  for (int k = 0; k < n; ++k) {
    if ((idx >> (n - 1 - k)) & 1) {
      out |= Eigen::Index{1}
             << (n - 1 - new_of_old[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

Vector permute_amplitudes(const Vector& amp, int n,
                          const std::vector<int>& new_of_old) {
  Vector out(amp.size());
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    out(permute_index(i, n, new_of_old)) = amp(i);
  }
  return out;
}

Matrix permute_density(const Matrix& rho, int n,
                       const std::vector<int>& new_of_old) {
  Matrix out(rho.rows(), rho.cols());
  std::vector<Eigen::Index> map(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    map[static_cast<std::size_t>(i)] = permute_index(i, n, new_of_old);
  }
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    const Eigen::Index pj = map[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      out(map[static_cast<std::size_t>(i)], pj) = rho(i, j);
    }
  }
  return out;
}

bool is_identity_permutation(const std::vector<int>& p) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] != static_cast<int>(k)) return false;
  }
  return true;
}

}  // namespace

// ---- construction -------------------------------------------------------------

LabeledState LabeledState::pure(std::vector<QubitLabel> reg, Vector amp) {
  require_unique(reg);
  const int n = static_cast<int>(reg.size());
  if (n > kMaxPureQubits) {
    throw TooLarge("pure state of " + std::to_string(n) + " qubits exceeds " +
                   std::to_string(kMaxPureQubits));
  }
  if (amp.size() != (Eigen::Index{1} << n)) {
    throw InvalidSize("amplitude vector length " + std::to_string(amp.size()) +
                      " is not 2^" + std::to_string(n));
  }
  if (std::abs(amp.norm() - 1.0) > tolerances().pure_norm) {
    throw BadDistribution("amplitude vector is not normalized");
  }
  const auto perm = canonical_permutation(reg);
  if (!is_identity_permutation(perm)) {
    amp = permute_amplitudes(amp, n, perm);
    reg = sorted_copy(std::move(reg));
  }
  LabeledState s;
  s.reg_ = std::move(reg);
  s.is_pure_ = true;
  s.amp_ = std::move(amp);
  return s;
}

LabeledState LabeledState::mixed(std::vector<QubitLabel> reg, Matrix rho) {
  require_unique(reg);
  const int n = static_cast<int>(reg.size());
  if (n > kMaxMixedQubits) {
    throw TooLarge("density matrix of " + std::to_string(n) +
                   " qubits exceeds " + std::to_string(kMaxMixedQubits));
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  if (rho.rows() != d || rho.cols() != d) {
    throw InvalidSize("density matrix is not 2^" + std::to_string(n) +
                      " square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tolerances().hermiticity) {
    throw BadDistribution("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tolerances().trace_one) {
    throw BadDistribution("density matrix trace is not 1");
  }
  if (min_eigenvalue(rho) < tolerances().state_min_eig) {
    throw BadDistribution("density matrix has a negative eigenvalue");
  }
  const auto perm = canonical_permutation(reg);
  if (!is_identity_permutation(perm)) {
    rho = permute_density(rho, n, perm);
    reg = sorted_copy(std::move(reg));
  }
  LabeledState s;
  s.reg_ = std::move(reg);
  s.is_pure_ = false;
  s.rho_ = std::move(rho);
  return s;
}

LabeledState StateFactory::unchecked_pure(std::vector<QubitLabel> reg,
                                          Vector amp) {
  LabeledState s;
  const auto perm = canonical_permutation(reg);
  if (!is_identity_permutation(perm)) {
    amp = permute_amplitudes(amp, static_cast<int>(reg.size()), perm);
    reg = sorted_copy(std::move(reg));
  }
  s.reg_ = std::move(reg);
  s.is_pure_ = true;
  s.amp_ = std::move(amp);
  return s;
}

LabeledState StateFactory::unchecked_mixed(std::vector<QubitLabel> reg,
                                           Matrix rho) {
  LabeledState s;
  const auto perm = canonical_permutation(reg);
  if (!is_identity_permutation(perm)) {
    rho = permute_density(rho, static_cast<int>(reg.size()), perm);
    reg = sorted_copy(std::move(reg));
  }
  s.reg_ = std::move(reg);
  s.is_pure_ = false;
  s.rho_ = std::move(rho);
  return s;
}

const Vector& LabeledState::amplitudes() const {
  if (!is_pure_) throw Error("state is mixed; no amplitude vector");
  return amp_;
}

const Matrix& LabeledState::density() const {
  if (is_pure_) throw Error("state is pure; call to_density()");
  return rho_;
}

Matrix LabeledState::to_density() const {
  if (is_pure_) return amp_ * amp_.adjoint();
  return rho_;
}

std::vector<int> LabeledState::positions_of(
    const std::vector<QubitLabel>& labels) const {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& q : labels) {
    const auto it = std::lower_bound(reg_.begin(), reg_.end(), q);
    if (it == reg_.end() || *it != q) {
      throw UnknownQubit("qubit " + q.to_string() + " not in register");
    }
    out.push_back(static_cast<int>(it - reg_.begin()));
  }
  check_positions(qubit_count(), out);
  return out;
}

bool LabeledState::has_qubit(const QubitLabel& q) const {
  return std::binary_search(reg_.begin(), reg_.end(), q);
}

// ---- preparation ----------------------------------------------------------------

LabeledState ghz_state(const std::vector<QubitLabel>& reg, double phase) {
  if (reg.empty()) {
    throw InvalidSize("GHZ state needs at least one qubit");
  }
  const int n = static_cast<int>(reg.size());
  if (n > kMaxPureQubits) {
    throw TooLarge("GHZ state of " + std::to_string(n) + " qubits exceeds " +
                   std::to_string(kMaxPureQubits));
  }
  Vector amp = Vector::Zero(Eigen::Index{1} << n);
  amp(0) = 1.0 / std::sqrt(2.0);
  amp(amp.size() - 1) = std::exp(cdouble(0, phase)) / std::sqrt(2.0);
  return LabeledState::pure(std::vector<QubitLabel>(reg), std::move(amp));
}

LabeledState plus_state(const QubitLabel& q) { return ghz_state({q}, 0.0); }

LabeledState zero_state(const std::vector<QubitLabel>& reg) {
  if (reg.empty()) {
    throw InvalidSize("zero state needs at least one qubit");
  }
  const int n = static_cast<int>(reg.size());
  if (n > kMaxPureQubits) {
    throw TooLarge("state of " + std::to_string(n) + " qubits exceeds " +
                   std::to_string(kMaxPureQubits));
  }
  Vector amp = Vector::Zero(Eigen::Index{1} << n);
  amp(0) = 1.0;
  return LabeledState::pure(std::vector<QubitLabel>(reg), std::move(amp));
}

// ---- composition ----------------------------------------------------------------

LabeledState tensor(const LabeledState& a, const LabeledState& b) {
  std::vector<QubitLabel> reg = a.reg_;
  reg.insert(reg.end(), b.reg_.begin(), b.reg_.end());
  require_unique(reg);
  const int n = static_cast<int>(reg.size());
  if (a.is_pure_ && b.is_pure_) {
    if (n > kMaxPureQubits) {
      throw TooLarge("tensor product exceeds " +
                     std::to_string(kMaxPureQubits) + " qubits");
    }
    return StateFactory::unchecked_pure(std::move(reg),
                                        kron(a.amp_, b.amp_));
  }
  if (n > kMaxMixedQubits) {
    throw TooLarge("mixed tensor product exceeds " +
                   std::to_string(kMaxMixedQubits) + " qubits");
  }
  return StateFactory::unchecked_mixed(std::move(reg),
                                       kron(a.to_density(), b.to_density()));
}

LabeledState to_mixed(const LabeledState& s) {
  if (!s.is_pure_) return s;
  if (s.qubit_count() > kMaxMixedQubits) {
    throw TooLarge("density form of " + std::to_string(s.qubit_count()) +
                   " qubits exceeds " + std::to_string(kMaxMixedQubits));
  }
  return StateFactory::unchecked_mixed(s.reg_, s.amp_ * s.amp_.adjoint());
}

// ---- low-level embedded application ----------------------------------------------

Vector apply_embedded(const Matrix& a, const Vector& x, int n_qubits,
                      const std::vector<int>& positions) {
  check_positions(n_qubits, positions);
  if (x.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidSize("vector length is not 2^n");
  }
  Vector y = x;
  kernel_apply(a, y.data(), n_qubits, positions);
  return y;
}

Matrix apply_embedded_left(const Matrix& a, const Matrix& x, int n_qubits,
                           const std::vector<int>& positions) {
  check_positions(n_qubits, positions);
  if (x.rows() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidSize("matrix row count is not 2^n");
  }
  Matrix y = x;
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    kernel_apply(a, y.col(c).data(), n_qubits, positions);
  }
  return y;
}

Matrix apply_embedded_right(const Matrix& a, const Matrix& x, int n_qubits,
                            const std::vector<int>& positions) {
  // X * A_emb = (A_emb^T X^T)^T, and embedding commutes with transposition.
  Matrix xt = x.transpose();
  if (xt.rows() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidSize("matrix column count is not 2^n");
  }
  check_positions(n_qubits, positions);
  const Matrix at = a.transpose();
  for (Eigen::Index c = 0; c < xt.cols(); ++c) {
    kernel_apply(at, xt.col(c).data(), n_qubits, positions);
  }
  return xt.transpose();
}

// ---- evolution -------------------------------------------------------------------

LabeledState apply_gate(const LabeledState& s, const Gate& gate) {
  gate.validate_unitary();
  const auto pos = s.positions_of(gate.support);
  if (s.is_pure_) {
    Vector amp = s.amp_;
    kernel_apply(gate.matrix, amp.data(), s.qubit_count(), pos);
    return StateFactory::unchecked_pure(s.reg_, std::move(amp));
  }
  Matrix rho = apply_embedded_left(gate.matrix, s.rho_, s.qubit_count(), pos);
  rho = apply_embedded_right(gate.matrix.adjoint(), rho, s.qubit_count(), pos);
  return StateFactory::unchecked_mixed(s.reg_, std::move(rho));
}

LabeledState apply_phase(const LabeledState& s, const QubitLabel& q,
                         double theta, int sign) {
  if (sign != 1 && sign != -1) {
    throw BadDistribution("phase sign must be +1 or -1");
  }
  // exp(-i sign theta Z/2) = diag(e^{-i sign theta/2}, e^{+i sign theta/2}).
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(cdouble(0, -sign * theta / 2));
  m(1, 1) = std::exp(cdouble(0, +sign * theta / 2));
  return apply_gate(s, Gate{{q}, std::move(m)});
}

LabeledState apply_x(const LabeledState& s, const QubitLabel& q) {
  return apply_gate(s, Gate{{q}, pauli_x()});
}

LabeledState apply_channel(const LabeledState& s, const Channel& ch) {
  ch.validate();
  const auto pos = s.positions_of(ch.support);
  if (s.is_pure_ && ch.kraus.size() == 1) {
    // A single Kraus operator with sum K^dagger K = 1 is unitary.
    Vector amp = s.amp_;
    kernel_apply(ch.kraus[0], amp.data(), s.qubit_count(), pos);
    return StateFactory::unchecked_pure(s.reg_, std::move(amp));
  }
  if (s.qubit_count() > kMaxMixedQubits) {
    throw TooLarge("channel forces density form beyond " +
                   std::to_string(kMaxMixedQubits) + " qubits");
  }
  const Matrix rho = s.to_density();
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ch.kraus) {
    Matrix term = apply_embedded_left(k, rho, s.qubit_count(), pos);
    term = apply_embedded_right(k.adjoint(), term, s.qubit_count(), pos);
    out += term;
  }
  return StateFactory::unchecked_mixed(s.reg_, std::move(out));
}

// ---- reduction -------------------------------------------------------------------

LabeledState partial_trace(const LabeledState& s,
                           const std::vector<QubitLabel>& keep) {
  if (keep.empty()) {
    throw InvalidSize("partial trace must keep at least one qubit");
  }
  std::vector<QubitLabel> kept = sorted_copy(keep);
  require_unique(kept);
  const auto pos = s.positions_of(kept);  // ascending since kept is sorted
  const int k = static_cast<int>(kept.size());
  if (k > kMaxMixedQubits) {
    throw TooLarge("reduced state of " + std::to_string(k) +
                   " qubits exceeds " + std::to_string(kMaxMixedQubits));
  }
  const SubsetIndexer ix(s.qubit_count(), pos);
  const Eigen::Index dk = ix.support_dim();
  Matrix out = Matrix::Zero(dk, dk);
  if (s.is_pure_) {
    const Vector& amp = s.amp_;
    Vector col(dk);
    for (Eigen::Index r = 0; r < ix.rest_dim(); ++r) {
      for (Eigen::Index i = 0; i < dk; ++i) col(i) = amp(ix.index(i, r));
      out.noalias() += col * col.adjoint();
    }
  } else {
    const Matrix& rho = s.rho_;
    for (Eigen::Index r = 0; r < ix.rest_dim(); ++r) {
      for (Eigen::Index j = 0; j < dk; ++j) {
        const Eigen::Index cj = ix.index(j, r);
        for (Eigen::Index i = 0; i < dk; ++i) {
          out(i, j) += rho(ix.index(i, r), cj);
        }
      }
    }
  }
  return StateFactory::unchecked_mixed(std::move(kept), std::move(out));
}

Matrix ptrace_operator(const Matrix& x, int n_qubits,
                       const std::vector<int>& keep_positions) {
  check_positions(n_qubits, keep_positions);
  if (x.rows() != (Eigen::Index{1} << n_qubits) || x.cols() != x.rows()) {
    throw InvalidSize("operator is not 2^n square");
  }
  const SubsetIndexer ix(n_qubits, keep_positions);
  const Eigen::Index dk = ix.support_dim();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < ix.rest_dim(); ++r) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      const Eigen::Index cj = ix.index(j, r);
      for (Eigen::Index i = 0; i < dk; ++i) {
        out(i, j) += x(ix.index(i, r), cj);
      }
    }
  }
  return out;
}

Matrix ptrace_outer(const Vector& x, int n_qubits,
                    const std::vector<int>& keep_positions) {
  check_positions(n_qubits, keep_positions);
  if (x.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidSize("vector is not 2^n long");
  }
  const SubsetIndexer ix(n_qubits, keep_positions);
  const Eigen::Index dk = ix.support_dim();
  Matrix out = Matrix::Zero(dk, dk);
  Vector col(dk);
  for (Eigen::Index r = 0; r < ix.rest_dim(); ++r) {
    for (Eigen::Index i = 0; i < dk; ++i) col(i) = x(ix.index(i, r));
    out.noalias() += col * col.adjoint();
  }
  return out;
}

// ---- measurement and expectation ----------------------------------------------------

double expectation(const LabeledState& s, const Observable& a) {
  a.validate();
  const auto pos = s.positions_of(a.support);
  if (s.is_pure()) {
    const Vector y =
        apply_embedded(a.matrix, s.amplitudes(), s.qubit_count(), pos);
    return s.amplitudes().dot(y).real();
  }
  const Matrix b =
      apply_embedded_left(a.matrix, s.density(), s.qubit_count(), pos);
  return b.trace().real();
}

double variance(const LabeledState& s, const Observable& a) {
  a.validate();
  const auto pos = s.positions_of(a.support);
  double mean = 0.0, second = 0.0;
  if (s.is_pure()) {
    const Vector y =
        apply_embedded(a.matrix, s.amplitudes(), s.qubit_count(), pos);
    mean = s.amplitudes().dot(y).real();
    second = y.squaredNorm();
  } else {
    const Matrix b =
        apply_embedded_left(a.matrix, s.density(), s.qubit_count(), pos);
    mean = b.trace().real();
    second = apply_embedded_left(a.matrix, b, s.qubit_count(), pos)
                 .trace()
                 .real();
  }
  double var = second - mean * mean;
  if (var < 0) {
    if (var < -1e-12) {
      throw Error("variance computed significantly negative");
    }
    var = 0.0;
  }
  return var;
}

ProjectionResult project_and_renormalize(const LabeledState& s,
                                         const Observable& projector,
                                         std::optional<double> tol) {
  projector.validate();
  const Matrix& p = projector.matrix;
  if ((p * p - p).cwiseAbs().maxCoeff() > tolerances().projector_idem) {
    throw BadDistribution("projector is not idempotent");
  }
  const double cutoff = tol.value_or(tolerances().zero_probability);
  const auto pos = s.positions_of(projector.support);
  ProjectionResult result;
  if (s.is_pure()) {
    Vector y = apply_embedded(p, s.amplitudes(), s.qubit_count(), pos);
    const double prob = y.squaredNorm();
    if (prob < cutoff) {
      throw ZeroProbability("projection probability " + std::to_string(prob) +
                            " below tolerance");
    }
    y /= std::sqrt(prob);
    result.probability = prob;
    result.state = StateFactory::unchecked_pure(s.reg(), std::move(y));
    return result;
  }
  Matrix b = apply_embedded_left(p, s.density(), s.qubit_count(), pos);
  b = apply_embedded_right(p, b, s.qubit_count(), pos);
  const double prob = b.trace().real();
  if (prob < cutoff) {
    throw ZeroProbability("projection probability " + std::to_string(prob) +
                          " below tolerance");
  }
  result.probability = prob;
  result.state = StateFactory::unchecked_mixed(s.reg(), b / prob);
  return result;
}

// ---- comparison -------------------------------------------------------------------

namespace {

void require_same_register(const LabeledState& a, const LabeledState& b) {
  if (a.reg() != b.reg()) {
    throw LabelMismatch("states live on different registers");
  }
}

}  // namespace

bool approx_equal(const LabeledState& a, const LabeledState& b,
                  std::optional<double> tol) {
  require_same_register(a, b);
  const double eps = tol.value_or(tolerances().phase_equality);
  if (a.is_pure() && b.is_pure()) {
    return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1.0) <= eps;
  }
  return state_trace_distance(a, b) <= eps;
}

double state_trace_distance(const LabeledState& a, const LabeledState& b) {
  require_same_register(a, b);
  return trace_distance(a.to_density(), b.to_density());
}

double state_fidelity(const LabeledState& a, const LabeledState& b) {
  require_same_register(a, b);
  if (a.is_pure() && b.is_pure()) {
    const double overlap = std::abs(a.amplitudes().dot(b.amplitudes()));
    return overlap * overlap;
  }
  if (a.is_pure()) {
    return (a.amplitudes().adjoint() * b.to_density() * a.amplitudes())(0)
        .real();
  }
  if (b.is_pure()) {
    return (b.amplitudes().adjoint() * a.to_density() * b.amplitudes())(0)
        .real();
  }
  return fidelity(a.density(), b.density());
}

}  // namespace qnm::qcore
