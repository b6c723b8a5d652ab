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

#ifndef QNM_STATE_HPP_
#define QNM_STATE_HPP_

#include <optional>
#include <vector>

#include "qnm/dense.hpp"
#include "qnm/labels.hpp"

namespace qnm::qcore {

// Size guards for the dense representations.
inline constexpr int kMaxPureQubits = 20;
inline constexpr int kMaxMixedQubits = 12;

// An exact dense quantum state over an explicitly labeled qubit register.
//
// The register is always kept in canonical label order (see QubitLabel).
// Qubit 0 of the register is the most significant bit of the basis index,
// so for register (q0, q1) the amplitude vector is ordered
// |00>, |01>, |10>, |11>.
//
// A state stays a pure amplitude vector until a channel or a partial trace
// forces a density matrix.  Vectors are admitted up to kMaxPureQubits
// qubits, matrices up to kMaxMixedQubits.
class LabeledState {
 public:
  // Validates: labels unique, dimension 2^n, norm / trace / positivity
  // within tolerance.  Registers are sorted to canonical order (amplitudes
  // permuted accordingly).  Throws LabelMismatch / InvalidSize /
  // BadDistribution / TooLarge.
  static LabeledState pure(std::vector<QubitLabel> reg, Vector amplitudes);
  static LabeledState mixed(std::vector<QubitLabel> reg, Matrix density);

  bool is_pure() const { return is_pure_; }
  int qubit_count() const { return static_cast<int>(reg_.size()); }
  Eigen::Index dim() const {
    return Eigen::Index{1} << static_cast<Eigen::Index>(reg_.size());
  }
  const std::vector<QubitLabel>& reg() const { return reg_; }

  // Pure-only / mixed-only accessors (Error if the representation differs).
  const Vector& amplitudes() const;
  const Matrix& density() const;

  // Density matrix regardless of representation.
  Matrix to_density() const;

  // Positions of the given labels within the register.
  // Throws UnknownQubit / LabelMismatch.
  std::vector<int> positions_of(const std::vector<QubitLabel>& labels) const;

  bool has_qubit(const QubitLabel& q) const;

 private:
  LabeledState() = default;

  std::vector<QubitLabel> reg_;
  bool is_pure_ = true;
  Vector amp_;
  Matrix rho_;

  friend LabeledState tensor(const LabeledState&, const LabeledState&);
  friend LabeledState to_mixed(const LabeledState&);
  friend LabeledState apply_gate(const LabeledState&, const Gate&);
  friend LabeledState apply_channel(const LabeledState&, const Channel&);
  friend LabeledState partial_trace(const LabeledState&,
                                    const std::vector<QubitLabel>&);
  friend struct ProjectionResult;
  friend class StateFactory;
};

// Internal constructor access for other translation units of the library.
class StateFactory {
 public:
  static LabeledState unchecked_pure(std::vector<QubitLabel> reg, Vector amp);
  static LabeledState unchecked_mixed(std::vector<QubitLabel> reg, Matrix rho);
};

// ---- preparation -----------------------------------------------------------

// (|0...0> + e^{i phase} |1...1>)/sqrt(2) on the given register (n >= 1).
// Throws InvalidSize on an empty register.
LabeledState ghz_state(const std::vector<QubitLabel>& reg, double phase = 0.0);

// (|0> + |1>)/sqrt(2) on one qubit.
LabeledState plus_state(const QubitLabel& q);

// |0...0> on the given register.
LabeledState zero_state(const std::vector<QubitLabel>& reg);

// ---- composition and conversion ---------------------------------------------

// Tensor product; registers must be disjoint.  Result is canonical.
// Pure x pure stays pure; otherwise mixed.
LabeledState tensor(const LabeledState& a, const LabeledState& b);

LabeledState to_mixed(const LabeledState& s);

// ---- evolution ---------------------------------------------------------------

// Applies a unitary gate on its support.  Pure stays pure.
LabeledState apply_gate(const LabeledState& s, const Gate& gate);

// Applies exp(-i * sign * theta * Z/2) to one qubit: the elementary phase
// signal (sign=+1), or its X-conjugate (sign=-1) which flips the acquired
// phase.  sign must be +1 or -1.
LabeledState apply_phase(const LabeledState& s, const QubitLabel& q,
                         double theta, int sign = +1);

// Pauli X on one qubit.
LabeledState apply_x(const LabeledState& s, const QubitLabel& q);

// Applies a CPTP channel.  A single-Kraus (unitary) channel keeps a pure
// state pure; otherwise the result is mixed.
LabeledState apply_channel(const LabeledState& s, const Channel& ch);

// ---- reduction ---------------------------------------------------------------

// Traces out every qubit not in `keep`.  The result is a density matrix on
// `keep` (in canonical order).  Throws UnknownQubit / LabelMismatch;
// InvalidSize if `keep` is empty; TooLarge beyond kMaxMixedQubits.
LabeledState partial_trace(const LabeledState& s,
                           const std::vector<QubitLabel>& keep);

// ---- measurement and expectation ---------------------------------------------

// <A> on the state; A must be Hermitian on qubits of the register.
double expectation(const LabeledState& s, const Observable& a);

// Var(s, A) = <A^2> - <A>^2, clipped at zero against round-off.
double variance(const LabeledState& s, const Observable& a);

struct ProjectionResult {
  double probability = 0.0;
  LabeledState state;  // renormalized conditional state
};

// Projects onto `projector` (validated idempotent Hermitian) and
// renormalizes.  Pure stays pure.  Throws ZeroProbability when the outcome
// probability falls below `tol` (default: tolerances().zero_probability).
ProjectionResult project_and_renormalize(
    const LabeledState& s, const Observable& projector,
    std::optional<double> tol = std::nullopt);

// ---- comparison ---------------------------------------------------------------

// Global-phase-insensitive equality: for pure states |<a|b>| within tol of
// 1; if either is mixed, trace distance within tol.  Registers must match.
bool approx_equal(const LabeledState& a, const LabeledState& b,
                  std::optional<double> tol = std::nullopt);

// Trace distance between two states on the same register.
double state_trace_distance(const LabeledState& a, const LabeledState& b);

// Uhlmann fidelity between two states on the same register.
double state_fidelity(const LabeledState& a, const LabeledState& b);

// ---- low-level embedded application (shared by other modules) ----------------

// y = (A embedded at `positions`) x, where positions index qubits of an
// n-qubit register (position 0 = most significant bit).  A is
// 2^m x 2^m with positions.size() == m; positions are distinct.
Vector apply_embedded(const Matrix& a, const Vector& x, int n_qubits,
                      const std::vector<int>& positions);

// (A embedded) * X for a dense matrix X with 2^n rows (columns untouched).
Matrix apply_embedded_left(const Matrix& a, const Matrix& x, int n_qubits,
                           const std::vector<int>& positions);

// X * (A embedded) for a dense matrix X with 2^n columns.
Matrix apply_embedded_right(const Matrix& a, const Matrix& x, int n_qubits,
                            const std::vector<int>& positions);

// Partial trace of a dense 2^n x 2^n operator onto the qubits at
// `keep_positions` (ascending output order follows the given positions).
// Unlike partial_trace() this has no state semantics: any operator is
// allowed, and keeping zero positions yields the 1x1 full trace.
Matrix ptrace_operator(const Matrix& x, int n_qubits,
                       const std::vector<int>& keep_positions);

// Partial trace of the (possibly unnormalized) outer product x x^dagger,
// without materializing the full matrix.
Matrix ptrace_outer(const Vector& x, int n_qubits,
                    const std::vector<int>& keep_positions);

}  // namespace qnm::qcore

#endif  // QNM_STATE_HPP_
