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

#include "qnm/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/qfi.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::witness {

using qcore::LabeledState;
using qcore::Matrix;
using qcore::Observable;
using qcore::QubitLabel;
using qcore::Vector;

// ---- closed-form spin-model bounds ---------------------------------------------

void SpinChainSpec::validate() const {
  if (M < 1) throw InvalidSize("site count must be at least 1");
  if (r < 1) throw InvalidSize("party count must be at least 1");
  if (nu < 1) throw InvalidSize("repetition count must be at least 1");
  if (tau < 1) throw InvalidSize("interaction neighbor count must be at least 1");
  const auto check_len = [this](const std::vector<double>& v,
                                const char* what) {
    if (v.size() != 1 && v.size() != static_cast<std::size_t>(M)) {
      throw InvalidSize(std::string(what) +
                        " must have one entry (broadcast) or one per site");
    }
  };
  check_len(variances, "variance list");
  check_len(alpha, "weight list");
  for (double v : variances) {
    if (v < 0) throw BadDistribution("variance must be non-negative");
  }
}

double spin_chain_mse_bound(const SpinChainSpec& spec) {
  spec.validate();
  const auto at = [](const std::vector<double>& v, int i) {
    return v.size() == 1 ? v[0] : v[static_cast<std::size_t>(i)];
  };
  double bound = 0.0;
  for (int i = 0; i < spec.M; ++i) {
    const double a = at(spec.alpha, i);
    if (a == 0.0) continue;
    const double var = at(spec.variances, i);
    if (var < tolerances().variance_floor) {
      return std::numeric_limits<double>::infinity();
    }
    bound += a * a / (4.0 * spec.nu * spec.tau * spec.r * var);
  }
  return bound;
}

IsingComparison ising_bound_compare(int M, double eps, int r) {
  if (M < 1) throw InvalidSize("site count must be at least 1");
  if (r < 1) throw InvalidSize("party count must be at least 1");
  if (eps < 0) throw BadDistribution("coupling ratio must be non-negative");
  IsingComparison out;
  out.ours = M * r * (2.0 + 2.0 * eps + eps * eps / 2.0);
  out.reference_small_eps = M * (1.0 + 1.25 * eps * eps);
  out.reference_large_eps = M * (0.5 + eps + eps * eps / 2.0);
  out.large_eps_in_regime = eps > out.eps_critical;
  return out;
}

// ---- circuit structure -----------------------------------------------------------

void CircuitSpec::validate() const {
  if (sites < 1) throw InvalidSize("circuit needs at least one site");
  if (depth < 0) throw InvalidSize("circuit depth must be non-negative");
  if (gate_locality < 1 || ham_locality < 1) {
    throw InvalidSize("locality parameters must be at least 1");
  }
  if (layers.empty()) return;
  if (static_cast<int>(layers.size()) != depth) {
    throw InvalidSize("layer count " + std::to_string(layers.size()) +
                      " does not match depth " + std::to_string(depth));
  }
  for (const auto& layer : layers) {
    std::vector<char> used(static_cast<std::size_t>(sites), 0);
    for (const auto& gate : layer) {
      if (gate.sites.empty()) throw InvalidSize("gate with no sites");
      if (static_cast<int>(gate.sites.size()) > gate_locality) {
        throw InvalidSize("gate on " + std::to_string(gate.sites.size()) +
                          " sites exceeds the declared locality");
      }
      for (int s : gate.sites) {
        if (s < 0 || s >= sites) {
          throw InvalidSize("gate site " + std::to_string(s) +
                            " out of range");
        }
        if (used[static_cast<std::size_t>(s)]++) {
          throw InvalidSize("two gates of one layer share site " +
                            std::to_string(s));
        }
      }
      const Eigen::Index d = Eigen::Index{1}
                             << static_cast<int>(gate.sites.size());
      if (gate.unitary.rows() != d || gate.unitary.cols() != d) {
        throw InvalidSize("gate matrix does not match its site count");
      }
      if (gate.generator && (gate.generator->rows() != d ||
                             gate.generator->cols() != d)) {
        throw InvalidSize("gate generator does not match its site count");
      }
      if (gate.generator &&
          !qcore::is_hermitian(*gate.generator, tolerances().hermiticity)) {
        throw BadDistribution("gate generator is not Hermitian");
      }
    }
  }
}

namespace {

void validate_terms(const CircuitSpec& spec,
                    const std::vector<HamTerm>& terms) {
  if (terms.empty()) {
    throw InvalidSize("at least one Hamiltonian term is required");
  }
  for (const auto& t : terms) {
    if (t.sites.empty()) throw InvalidSize("Hamiltonian term with no sites");
    if (static_cast<int>(t.sites.size()) > spec.ham_locality) {
      throw InvalidSize("Hamiltonian term on " +
                        std::to_string(t.sites.size()) +
                        " sites exceeds the declared locality");
    }
    std::vector<int> sorted = t.sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidSize("Hamiltonian term repeats a site");
    }
    for (int s : t.sites) {
      if (s < 0 || s >= spec.sites) {
        throw InvalidSize("Hamiltonian term site " + std::to_string(s) +
                          " out of range");
      }
    }
    const Eigen::Index d = Eigen::Index{1}
                           << static_cast<int>(t.sites.size());
    if (t.matrix.rows() != d || t.matrix.cols() != d) {
      throw InvalidSize("Hamiltonian term matrix does not match its sites");
    }
    if (!qcore::is_hermitian(t.matrix, tolerances().hermiticity)) {
      throw BadDistribution("Hamiltonian term is not Hermitian");
    }
  }
}

// A Hermitian operator tracked on an explicit (sorted) site subset.
struct SiteOperator {
  std::vector<int> sites;
  Matrix m;
};

SiteOperator make_site_operator(const HamTerm& term) {
  // Sort legs into ascending site order by embedding at listed positions.
  std::vector<int> sorted = term.sites;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos;
  pos.reserve(term.sites.size());
  for (int s : term.sites) {
    pos.push_back(static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin()));
  }
  const int n = static_cast<int>(sorted.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  return SiteOperator{std::move(sorted),
                      qcore::apply_embedded_left(
                          term.matrix, Matrix::Identity(d, d), n, pos)};
}

// Embeds op into the (sorted) superset `sites`.
Matrix embed_into(const SiteOperator& op, const std::vector<int>& sites) {
  std::vector<int> pos;
  pos.reserve(op.sites.size());
  for (int s : op.sites) {
    pos.push_back(static_cast<int>(
        std::lower_bound(sites.begin(), sites.end(), s) - sites.begin()));
  }
  const int n = static_cast<int>(sites.size());
  const Eigen::Index d = Eigen::Index{1} << n;
  return qcore::apply_embedded_left(op.m, Matrix::Identity(d, d), n, pos);
}

// op <- U^dagger op U for a gate on `gate_sites`; no-op if disjoint.
void conjugate_by_gate(SiteOperator& op, const std::vector<int>& gate_sites,
                       const Matrix& unitary) {
  std::vector<int> gsorted = gate_sites;
  std::sort(gsorted.begin(), gsorted.end());
  const bool touches = std::any_of(gsorted.begin(), gsorted.end(), [&](int s) {
    return std::binary_search(op.sites.begin(), op.sites.end(), s);
  });
  if (!touches) return;

  std::vector<int> merged;
  std::set_union(op.sites.begin(), op.sites.end(), gsorted.begin(),
                 gsorted.end(), std::back_inserter(merged));
  if (static_cast<int>(merged.size()) > qcore::kMaxMixedQubits) {
    throw TooLarge("conjugated term support exceeds the dense limit");
  }
  Matrix grown = (merged == op.sites) ? op.m : embed_into(op, merged);

  // Map the gate's listed site order to positions in the merged support.
  std::vector<int> pos;
  pos.reserve(gate_sites.size());
  for (int s : gate_sites) {
    pos.push_back(static_cast<int>(
        std::lower_bound(merged.begin(), merged.end(), s) - merged.begin()));
  }
  const int n = static_cast<int>(merged.size());
  grown = qcore::apply_embedded_right(unitary, grown, n, pos);
  grown = qcore::apply_embedded_left(unitary.adjoint(), grown, n, pos);
  op.sites = std::move(merged);
  op.m = std::move(grown);
}

// Drops every site on which the operator acts trivially (within
// tolerances().support_triviality in operator norm).
void reduce_support(SiteOperator& op) {
  bool changed = true;
  while (changed && !op.sites.empty()) {
    changed = false;
    const int n = static_cast<int>(op.sites.size());
    for (int p = 0; p < n; ++p) {
      std::vector<int> others;
      for (int q = 0; q < n; ++q) {
        if (q != p) others.push_back(q);
      }
      const Matrix reduced = qcore::ptrace_operator(op.m, n, others) / 2.0;
      Matrix lifted;
      if (others.empty()) {
        lifted = reduced(0, 0) * Matrix::Identity(op.m.rows(), op.m.cols());
      } else {
        const Eigen::Index d = op.m.rows();
        lifted = qcore::apply_embedded_left(reduced, Matrix::Identity(d, d), n,
                                            others);
      }
      if (qcore::operator_norm_hermitian(op.m - lifted) <=
          tolerances().support_triviality) {
        op.m = reduced;
        op.sites.erase(op.sites.begin() + p);
        changed = true;
        break;
      }
    }
  }
}

// U^dagger H U for the whole circuit (layers applied first-to-last to
// states, so conjugation processes them last-to-first).
SiteOperator conjugate_through(const CircuitSpec& spec, const HamTerm& term) {
  SiteOperator op = make_site_operator(term);
  for (auto layer = spec.layers.rbegin(); layer != spec.layers.rend();
       ++layer) {
    for (const auto& gate : *layer) {
      conjugate_by_gate(op, gate.sites, gate.unitary);
    }
  }
  return op;
}

// Product state of the factors; the combined canonical register defines the
// site numbering 0..sites-1.
LabeledState combined_state(const std::vector<LabeledState>& factors,
                            int sites) {
  if (factors.empty()) {
    throw NotSeparableInput("at least one product factor is required");
  }
  LabeledState state = LabeledState::pure({}, Vector::Ones(1));
  try {
    for (const auto& f : factors) state = tensor(state, f);
  } catch (const LabelMismatch&) {
    throw NotSeparableInput("product factors share a qubit label");
  }
  if (state.qubit_count() != sites) {
    throw InvalidSize("product covers " + std::to_string(state.qubit_count()) +
                      " qubits but the circuit has " + std::to_string(sites) +
                      " sites");
  }
  return state;
}

Observable site_observable(const LabeledState& state, const SiteOperator& op) {
  std::vector<QubitLabel> support;
  support.reserve(op.sites.size());
  for (int s : op.sites) {
    support.push_back(state.reg()[static_cast<std::size_t>(s)]);
  }
  return Observable{std::move(support), op.m};
}

// Applies the circuit, with each gate's theta-phase inserted before it:
// per gate, state <- U_g exp(-i theta H_g) state.
LabeledState apply_circuit(const CircuitSpec& spec, const LabeledState& rho,
                           double theta) {
  LabeledState state = rho;
  for (const auto& layer : spec.layers) {
    for (const auto& gate : layer) {
      std::vector<QubitLabel> support;
      support.reserve(gate.sites.size());
      for (int s : gate.sites) {
        support.push_back(state.reg()[static_cast<std::size_t>(s)]);
      }
      Matrix m = gate.unitary;
      if (theta != 0.0 && gate.generator) {
        m = m * qcore::expi_hermitian(*gate.generator, theta);
      }
      state = qcore::apply_gate(state, qcore::Gate{std::move(support), m});
    }
  }
  return state;
}

// Exact F_Q(state, sum_i ops_i) for a list of commutation-free site
// operators: pure states via generator images, mixed via the eigenbasis
// formula on the summed dense generator.
double exact_qfi_of_sum(const LabeledState& state,
                        const std::vector<SiteOperator>& ops) {
  if (state.is_pure()) {
    const Vector& psi = state.amplitudes();
    std::vector<Vector> images;
    images.reserve(ops.size());
    double mean = 0.0;
    for (const auto& op : ops) {
      std::vector<int> pos(op.sites.begin(), op.sites.end());
      images.push_back(
          qcore::apply_embedded(op.m, psi, state.qubit_count(), pos));
      mean += psi.dot(images.back()).real();
    }
    double second = 0.0;
    for (const auto& yi : images) {
      for (const auto& yj : images) {
        second += yi.dot(yj).real();
      }
    }
    return 4.0 * (second - mean * mean);
  }
  const int n = state.qubit_count();
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix total = Matrix::Zero(d, d);
  for (const auto& op : ops) {
    std::vector<int> pos(op.sites.begin(), op.sites.end());
    total += qcore::apply_embedded_left(op.m, Matrix::Identity(d, d), n, pos);
  }
  const Observable h{state.reg(), std::move(total)};
  return metro::qfi_matrix(state, {h}).matrix(0, 0);
}

}  // namespace

// ---- light cone -------------------------------------------------------------------

long light_cone_q(const CircuitSpec& spec) {
  spec.validate();
  const int d = spec.depth;
  if (d == 0) return spec.ham_locality;
  switch (spec.geometry) {
    case Geometry::kChain1d:
      if (spec.gate_locality != 2 || spec.ham_locality != 1) {
        throw UnsupportedGeometry(
            "the chain form needs two-site gates and one-site terms");
      }
      return 2L * d + 1L;
    case Geometry::kLattice2d:
      if (spec.gate_locality != 2 || spec.ham_locality != 1) {
        throw UnsupportedGeometry(
            "the planar form needs two-site gates and one-site terms");
      }
      return static_cast<long>(d) * d +
             static_cast<long>(d + 1) * (d + 1);
    case Geometry::kGeneric: {
      long q = spec.ham_locality;
      for (int i = 0; i < d; ++i) {
        if (q > std::numeric_limits<long>::max() / spec.gate_locality) {
          throw TooLarge("light-cone size overflows");
        }
        q *= spec.gate_locality;
      }
      return q;
    }
  }
  throw UnsupportedGeometry("unknown circuit geometry");
}

int exact_lightcone_check(const CircuitSpec& spec,
                          const std::vector<HamTerm>& terms) {
  spec.validate();
  validate_terms(spec, terms);
  if (spec.sites > qcore::kMaxMixedQubits) {
    throw TooLarge("exact support tracking is capped at " +
                   std::to_string(qcore::kMaxMixedQubits) + " sites");
  }
  if (spec.depth > 0 && spec.layers.empty()) {
    throw InvalidSize("the exact check needs the explicit layers");
  }
  int widest = 0;
  for (const auto& term : terms) {
    SiteOperator op = conjugate_through(spec, term);
    reduce_support(op);
    widest = std::max(widest, static_cast<int>(op.sites.size()));
  }
  return widest;
}

ShallowBound shallow_qfi_bound(const std::vector<LabeledState>& factors,
                               const CircuitSpec& spec,
                               const std::vector<HamTerm>& terms) {
  spec.validate();
  validate_terms(spec, terms);
  if (spec.depth > 0 && spec.layers.empty()) {
    throw InvalidSize("the variance bound needs the explicit layers");
  }
  const LabeledState rho = combined_state(factors, spec.sites);

  ShallowBound out;
  out.q = light_cone_q(spec);

  double var_sum = 0.0;
  for (const auto& term : terms) {
    SiteOperator op = conjugate_through(spec, term);
    reduce_support(op);
    var_sum += qcore::variance(rho, site_observable(rho, op));
  }
  out.bound = 4.0 * static_cast<double>(out.q) * var_sum;

  // Exact value on the circuit output with the original (unconjugated)
  // terms -- an independent path that shares none of the light-cone code.
  const bool exact_feasible =
      rho.is_pure() || rho.qubit_count() <= qcore::kMaxMixedQubits;
  if (exact_feasible) {
    const LabeledState sigma = apply_circuit(spec, rho, 0.0);
    std::vector<SiteOperator> originals;
    originals.reserve(terms.size());
    for (const auto& term : terms) originals.push_back(make_site_operator(term));
    out.exact_qfi = exact_qfi_of_sum(sigma, originals);
  }
  return out;
}

// ---- embedded gate parameters ------------------------------------------------------

double fd_qfi(const std::vector<LabeledState>& factors,
              const CircuitSpec& spec, double step, double* defect) {
  spec.validate();
  if (spec.depth > 0 && spec.layers.empty()) {
    throw InvalidSize("the finite-difference family needs explicit layers");
  }
  if (step <= 0) throw BadDistribution("finite-difference step must be positive");
  const LabeledState rho = combined_state(factors, spec.sites);
  const auto fd_at = [&](double d) {
    const LabeledState plus = apply_circuit(spec, rho, +d);
    const LabeledState minus = apply_circuit(spec, rho, -d);
    // Squared Uhlmann fidelity expands as 1 - F_Q delta^2 / 4 over the
    // parameter gap delta = 2d.
    const double f = qcore::state_fidelity(minus, plus);
    return 4.0 * (1.0 - f) / (4.0 * d * d);
  };
  const double coarse = fd_at(step);
  const double fine = fd_at(step / 2.0);
  if (defect) *defect = std::abs(coarse - fine);
  // Richardson extrapolation of the O(step^2) truncation error.
  return (4.0 * fine - coarse) / 3.0;
}

EmbeddedBound embedded_param_qfi_bound(const std::vector<LabeledState>& factors,
                                       const CircuitSpec& spec,
                                       bool with_exact) {
  spec.validate();
  if (spec.geometry != Geometry::kChain1d) {
    throw UnsupportedGeometry("the embedded-parameter bound needs a chain");
  }
  if (spec.depth > 0 && spec.layers.empty()) {
    throw InvalidSize("the embedded-parameter bound needs explicit layers");
  }
  for (const auto& layer : spec.layers) {
    for (const auto& gate : layer) {
      if (gate.sites.size() == 2 &&
          std::abs(gate.sites[0] - gate.sites[1]) != 1) {
        throw UnsupportedGeometry("chain gates must act on adjacent sites");
      }
      if (gate.sites.size() > 2) {
        throw UnsupportedGeometry("chain gates act on at most two sites");
      }
    }
  }
  const LabeledState rho = combined_state(factors, spec.sites);

  EmbeddedBound out;
  const int depth = spec.depth;
  for (int j = 1; j <= depth; ++j) {
    double layer_var = 0.0;
    for (const auto& gate : spec.layers[static_cast<std::size_t>(j - 1)]) {
      if (!gate.generator) continue;
      // Lift the gate generator through the preceding layers.
      SiteOperator op = make_site_operator(HamTerm{gate.sites, *gate.generator});
      for (int earlier = j - 1; earlier >= 1; --earlier) {
        for (const auto& g :
             spec.layers[static_cast<std::size_t>(earlier - 1)]) {
          conjugate_by_gate(op, g.sites, g.unitary);
        }
      }
      reduce_support(op);
      layer_var += qcore::variance(rho, site_observable(rho, op));
    }
    out.bound += 4.0 * static_cast<double>(depth) *
                 static_cast<double>(2 * j + depth + 4) * layer_var;
  }
  if (with_exact) {
    double defect = 0.0;
    out.exact_qfi_fd = fd_qfi(factors, spec, tolerances().fd_step, &defect);
    out.richardson_defect = defect;
  }
  return out;
}

}  // namespace qnm::witness
