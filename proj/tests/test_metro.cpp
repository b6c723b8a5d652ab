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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnm/covariance.hpp"
#include "qnm/errors.hpp"
#include "qnm/hypergraph.hpp"
#include "qnm/network_state.hpp"
#include "qnm/qfi.hpp"
#include "qnm/state.hpp"
#include "qnm/tmatrix.hpp"
#include "qnm/tolerances.hpp"

using qnm::netgraph::Hypergraph;
using qnm::netgraph::SignalLayout;
using qnm::qcore::LabeledState;
using qnm::qcore::Matrix;
using qnm::qcore::Observable;
using qnm::qcore::QubitLabel;
using qnm::qcore::Vector;

namespace {

std::vector<QubitLabel> edge_register(int e, const std::vector<int>& members) {
  std::vector<QubitLabel> reg;
  for (int v : members) reg.push_back(QubitLabel::source(e, v));
  return reg;
}

// All-GHZ sources for a hypergraph, in edge order.
std::vector<LabeledState> ghz_sources(const Hypergraph& g) {
  std::vector<LabeledState> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    out.push_back(qnm::qcore::ghz_state(edge_register(e, g.edge(e))));
  }
  return out;
}

SignalLayout singleton_layout(int k) {
  SignalLayout layout;
  for (int v = 0; v < k; ++v) layout.signals.push_back({v});
  layout.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
  return layout;
}

// The triangle Bell network: three vertices, a pair source on every edge,
// singleton signals with uniform weights.
struct Triangle {
  Hypergraph g{3, {{0, 1}, {0, 2}, {1, 2}}};
  SignalLayout layout = singleton_layout(3);
  LabeledState state = qnm::qcore::assemble_network_state(
      qnm::qcore::NetworkDescription{g, ghz_sources(g), {}});
};

// Generator embedded on the full register as a dense matrix.
Matrix embed_full(const LabeledState& s, const Observable& h) {
  const Matrix id = Matrix::Identity(s.dim(), s.dim());
  return qnm::qcore::apply_embedded_left(h.matrix, id, s.qubit_count(),
                                         s.positions_of(h.support));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("standard generators put half-weight Z on each incident source qubit") {
  Triangle tri;
  const auto gens = qnm::metro::standard_generators(tri.g, tri.layout);
  REQUIRE(gens.size() == 3);
  // Vertex 0 sits on edges 0 = {0,1} and 1 = {0,2}.
  CHECK(gens[0].support ==
        std::vector<QubitLabel>{QubitLabel::source(0, 0),
                                QubitLabel::source(1, 0)});
  const Matrix z = qnm::qcore::pauli_z();
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix expected =
      0.5 * (qnm::qcore::kron(z, id) + qnm::qcore::kron(id, z));
  CHECK(max_abs(gens[0].matrix - expected) < 1e-14);

  const auto full = qnm::metro::standard_generators(tri.g, tri.layout, 1.0);
  CHECK(max_abs(full[0].matrix - 2.0 * gens[0].matrix) < 1e-14);
}

TEST_CASE("ghz line fisher information grows with the squared size") {
  for (int m = 2; m <= 5; ++m) {
    std::vector<int> members;
    for (int v = 0; v < m; ++v) members.push_back(v);
    Hypergraph g(m, {members});
    SignalLayout layout;
    layout.signals = {members};
    layout.weights = {1.0};
    const LabeledState psi = qnm::qcore::ghz_state(edge_register(0, members));
    const auto gens = qnm::metro::standard_generators(g, layout);
    const auto f = qnm::metro::qfi_matrix(psi, gens);
    REQUIRE(f.size() == 1);
    CHECK(f.matrix(0, 0) == doctest::Approx(double(m) * m).epsilon(1e-10));

    // The density-matrix path must agree with the pure-state reduction.
    const auto f_mixed = qnm::metro::qfi_matrix(qnm::qcore::to_mixed(psi), gens);
    CHECK(std::abs(f.matrix(0, 0) - f_mixed.matrix(0, 0)) < 1e-8);
  }
}

TEST_CASE("pure and density paths agree entrywise on the triangle") {
  Triangle tri;
  const auto gens = qnm::metro::standard_generators(tri.g, tri.layout);
  const auto pure = qnm::metro::qfi_matrix(tri.state, gens);
  const auto dense =
      qnm::metro::qfi_matrix(qnm::qcore::to_mixed(tri.state), gens);
  CHECK((pure.matrix - dense.matrix).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("triangle qfi matrix is two on the diagonal and one off it") {
  Triangle tri;
  const auto gens = qnm::metro::standard_generators(tri.g, tri.layout);
  const auto f = qnm::metro::qfi_matrix(tri.state, gens);
  REQUIRE(f.size() == 3);
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      CHECK(f.matrix(s, t) == doctest::Approx(s == t ? 2.0 : 1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("sld solutions satisfy their defining equation on a noisy pair") {
  Hypergraph g(2, {{0, 1}});
  qnm::qcore::NetworkDescription desc{
      g,
      ghz_sources(g),
      {{0, qnm::qcore::dephasing_kraus(1, 0.3)}}};
  const LabeledState rho = qnm::qcore::assemble_network_state(desc);
  REQUIRE_FALSE(rho.is_pure());

  const auto layout = singleton_layout(2);
  const auto gens = qnm::metro::standard_generators(g, layout);
  const auto with = qnm::metro::qfi_matrix_with_slds(rho, gens);
  REQUIRE(with.slds.size() == 2);

  const Matrix rho_m = rho.to_density();
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const Matrix h = embed_full(rho, gens[s]);
    const Matrix drho =
        std::complex<double>(0, -1) * (h * rho_m - rho_m * h);
    const Matrix& l = with.slds[s];
    CHECK(max_abs((l * rho_m + rho_m * l) / 2.0 - drho) < 1e-9);
    CHECK(max_abs(l - l.adjoint()) < 1e-9);
    // F_ss = tr(rho L_s^2).
    CHECK(std::abs((rho_m * l * l).trace().real() -
                   with.qfi.matrix(Eigen::Index(s), Eigen::Index(s))) < 1e-8);
  }
  // F_st = Re tr(rho L_s L_t).
  const double f01 = (rho_m * with.slds[0] * with.slds[1]).trace().real();
  CHECK(std::abs(f01 - with.qfi.matrix(0, 1)) < 1e-8);
}

TEST_CASE("qfi agrees with the fidelity finite difference on a mixed state") {
  Hypergraph g(2, {{0, 1}});
  qnm::qcore::NetworkDescription desc{
      g,
      ghz_sources(g),
      {{1, qnm::qcore::depolarizing_kraus(1, 0.25)}}};
  const LabeledState rho = qnm::qcore::assemble_network_state(desc);
  const auto layout = singleton_layout(2);
  const auto gens = qnm::metro::standard_generators(g, layout);
  const auto f = qnm::metro::qfi_matrix(rho, gens);

  const double d = 1e-4;
  const auto shifted = [&](double t) {
    const qnm::qcore::Gate gate{
        gens[0].support, qnm::qcore::expi_hermitian(gens[0].matrix, t)};
    return qnm::qcore::apply_gate(rho, gate);
  };
  // Squared Uhlmann fidelity expands as 1 - F_Q (2d)^2 / 4.
  const double fid = qnm::qcore::state_fidelity(shifted(-d), shifted(+d));
  const double f_fd = 4.0 * (1.0 - fid) / (4.0 * d * d);
  CHECK(std::abs(f_fd - f.matrix(0, 0)) < 1e-4);
}

TEST_CASE("the maximally mixed state carries no information") {
  const auto reg = edge_register(0, {0, 1});
  const LabeledState rho =
      LabeledState::mixed(reg, Matrix::Identity(4, 4) / 4.0);
  std::vector<Observable> gens;
  gens.push_back(Observable{{reg[0]}, qnm::qcore::pauli_z() / 2.0});
  const auto f = qnm::metro::qfi_matrix(rho, gens);
  CHECK(std::abs(f.matrix(0, 0)) < 1e-12);
}

TEST_CASE("triangle influence bound holds with a zero-eigenvalue gap") {
  Triangle tri;
  const auto diag = qnm::metro::qfi_diag_bound(tri.g, tri.layout, tri.state);
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      CHECK(diag.matrix(s, t) ==
            doctest::Approx(s == t ? 4.0 : 0.0).epsilon(1e-10));
    }
  }

  const auto cert = qnm::metro::verify_qfi_bound(tri.g, tri.layout, tri.state);
  CHECK(cert.holds);
  CHECK(std::abs(cert.gap_min_eig) < 1e-9);  // eigenvalues (0, 3, 3)
  CHECK(cert.qfi_trace == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(cert.k_values == std::vector<int>{2, 2, 2});
  CHECK(cert.isolated == std::vector<bool>{false, false, false});
  REQUIRE(cert.variances.size() == 3);
  for (double v : cert.variances) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("triangle mean-squared-error bound is one twelfth") {
  Triangle tri;
  const double bound =
      qnm::metro::mse_lower_bound(tri.g, tri.layout, tri.state, 1);
  CHECK(bound == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  // nu repetitions scale the bound down linearly.
  CHECK(qnm::metro::mse_lower_bound(tri.g, tri.layout, tri.state, 4) ==
        doctest::Approx(1.0 / 48.0).epsilon(1e-10));
}

TEST_CASE("matrix combination bound matches the scalar bound on the triangle") {
  Triangle tri;
  const auto gens = qnm::metro::standard_generators(tri.g, tri.layout);
  const auto f = qnm::metro::qfi_matrix(tri.state, gens);
  const auto crb = qnm::metro::matrix_crb(f, 1, tri.layout.weights);
  CHECK_FALSE(crb.used_pseudo_inverse);
  CHECK(crb.value == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
  // The scalar influence bound is attained here: equality with matrix form.
  const double bound =
      qnm::metro::mse_lower_bound(tri.g, tri.layout, tri.state, 1);
  CHECK(std::abs(crb.value - bound) < 1e-12);
}

TEST_CASE("matrix combination bound pseudo-inverts a singular qfi") {
  // On a Bell pair the two half-Z generators act identically: rank one.
  Hypergraph g(2, {{0, 1}});
  const LabeledState psi = qnm::qcore::ghz_state(edge_register(0, {0, 1}));
  const auto layout = singleton_layout(2);
  const auto gens = qnm::metro::standard_generators(g, layout);
  const auto f = qnm::metro::qfi_matrix(psi, gens);
  CHECK(f.matrix(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f.matrix(0, 1) == doctest::Approx(1.0).epsilon(1e-10));

  const auto crb = qnm::metro::matrix_crb(f, 1, layout.weights);
  CHECK(crb.used_pseudo_inverse);
  // Pseudo-inverse of the all-ones matrix is itself divided by four.
  CHECK(crb.value == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("a zero-variance weighted signal has no finite error bound") {
  Hypergraph g(2, {{0, 1}});
  const LabeledState zeros = qnm::qcore::zero_state(edge_register(0, {0, 1}));
  const auto layout = singleton_layout(2);
  const double bound = qnm::metro::mse_lower_bound(g, layout, zeros, 1);
  CHECK(bound == qnm::metro::kInfiniteBound);
}

TEST_CASE("an isolated weighted signal has no finite error bound") {
  // Vertex 2 touches no source: its generator is empty and carries nothing.
  Hypergraph g(3, {{0, 1}});
  const LabeledState psi = qnm::qcore::ghz_state(edge_register(0, {0, 1}));
  const auto layout = singleton_layout(3);
  const double bound = qnm::metro::mse_lower_bound(g, layout, psi, 1);
  CHECK(bound == qnm::metro::kInfiniteBound);
}

TEST_CASE("dropping the isolated signal's weight restores the finite bound") {
  Hypergraph g(3, {{0, 1}});
  const LabeledState psi = qnm::qcore::ghz_state(edge_register(0, {0, 1}));
  SignalLayout layout = singleton_layout(3);
  layout.weights = {0.5, 0.5, 0.0};
  const double bound = qnm::metro::mse_lower_bound(g, layout, psi, 1);
  // Two weighted signals whose shared edge gives k_s = 2, Var = 1/4 each:
  // sum of 0.25 / (4 * 2 * 0.25) twice.
  CHECK(bound == doctest::Approx(0.25).epsilon(1e-10));

  const auto cert = qnm::metro::verify_qfi_bound(g, layout, psi);
  CHECK(cert.holds);
  CHECK(cert.k_values == std::vector<int>{2, 2, 1});
  CHECK(cert.isolated == std::vector<bool>{false, false, true});
}

TEST_CASE("noisy triangle still satisfies the influence bound") {
  Triangle tri;
  qnm::qcore::NetworkDescription desc{
      tri.g,
      ghz_sources(tri.g),
      {{0, qnm::qcore::depolarizing_kraus(2, 0.3)},
       {2, qnm::qcore::dephasing_kraus(2, 0.5)}}};
  const LabeledState rho = qnm::qcore::assemble_network_state(desc);
  REQUIRE_FALSE(rho.is_pure());
  const auto cert = qnm::metro::verify_qfi_bound(tri.g, tri.layout, rho);
  CHECK(cert.holds);
  CHECK(cert.gap_min_eig >= qnm::tolerances().psd_gap);
}

// ---- covariance decomposition ------------------------------------------------

TEST_CASE("covariance of independent qubits splits into diagonal parts") {
  const QubitLabel q0 = QubitLabel::ancilla(0, 0);
  const QubitLabel q1 = QubitLabel::ancilla(1, 0);
  std::vector<LabeledState> factors = {qnm::qcore::plus_state(q0),
                                       qnm::qcore::plus_state(q1)};
  std::vector<Observable> obs = {Observable{{q0}, qnm::qcore::pauli_z()},
                                 Observable{{q1}, qnm::qcore::pauli_z()}};
  const auto d = qnm::metro::cov_decompose(factors, obs);
  REQUIRE(d.parts.size() == 2);

  Matrix first = Matrix::Zero(2, 2);
  first(0, 0) = 1.0;
  Matrix second = Matrix::Zero(2, 2);
  second(1, 1) = 1.0;
  CHECK(max_abs(d.parts[0] - first) < 1e-10);
  CHECK(max_abs(d.parts[1] - second) < 1e-10);
  CHECK(max_abs(d.total.matrix - Matrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("a single factor keeps the whole covariance") {
  const auto reg = edge_register(0, {0, 1});
  std::vector<LabeledState> factors = {qnm::qcore::ghz_state(reg)};
  std::vector<Observable> obs = {Observable{{reg[0]}, qnm::qcore::pauli_z()},
                                 Observable{{reg[1]}, qnm::qcore::pauli_z()}};
  const auto d = qnm::metro::cov_decompose(factors, obs);
  REQUIRE(d.parts.size() == 1);
  CHECK(max_abs(d.parts[0] - d.total.matrix) < 1e-10);
  // Perfectly correlated half-Z outcomes: the all-ones covariance.
  CHECK(max_abs(d.total.matrix - Matrix::Ones(2, 2)) < 1e-10);
}

TEST_CASE("factors outside an observable's support get zero blocks") {
  const QubitLabel q0 = QubitLabel::ancilla(0, 0);
  const QubitLabel q1 = QubitLabel::ancilla(1, 0);
  const QubitLabel q2 = QubitLabel::ancilla(2, 0);
  std::vector<LabeledState> factors = {qnm::qcore::plus_state(q0),
                                       qnm::qcore::plus_state(q1),
                                       qnm::qcore::plus_state(q2)};
  std::vector<Observable> obs = {Observable{{q0}, qnm::qcore::pauli_z()},
                                 Observable{{q2}, qnm::qcore::pauli_z()}};
  const auto d = qnm::metro::cov_decompose(factors, obs);
  REQUIRE(d.parts.size() == 3);
  // Factor 0 may only touch entry (0,0); factor 1 touches nothing.
  CHECK(std::abs(d.parts[0](0, 1)) < 1e-10);
  CHECK(std::abs(d.parts[0](1, 0)) < 1e-10);
  CHECK(std::abs(d.parts[0](1, 1)) < 1e-10);
  CHECK(max_abs(d.parts[1]) < 1e-10);
  CHECK(std::abs(d.parts[2](0, 0)) < 1e-10);
  CHECK(std::abs(d.parts[2](1, 1) - 1.0) < 1e-10);
}

TEST_CASE("decomposition parts are psd and sum to the total") {
  const auto bell_reg = edge_register(0, {0, 1});
  const QubitLabel lone = QubitLabel::ancilla(5, 0);
  std::vector<LabeledState> factors = {
      qnm::qcore::ghz_state(bell_reg, 0.7),
      qnm::qcore::plus_state(lone),
  };
  const Matrix zz =
      qnm::qcore::kron(qnm::qcore::pauli_z(), qnm::qcore::pauli_z());
  std::vector<Observable> obs = {
      Observable{bell_reg, zz},
      Observable{{lone}, qnm::qcore::pauli_z()},
      Observable{{bell_reg[0]}, qnm::qcore::pauli_x()},
  };
  const auto d = qnm::metro::cov_decompose(factors, obs);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& part : d.parts) {
    sum += part;
    const Matrix herm = (part + part.adjoint()) / 2.0;
    CHECK(max_abs(part - herm) < 1e-9);
    CHECK(qnm::qcore::min_eigenvalue(herm) >=
          qnm::tolerances().decomposition_psd);
  }
  CHECK(max_abs(sum - d.total.matrix) < qnm::tolerances().decomposition_sum);
}

TEST_CASE("mixed factors decompose as well as pure ones") {
  Hypergraph g(2, {{0, 1}});
  qnm::qcore::NetworkDescription desc{
      g, ghz_sources(g), {{0, qnm::qcore::dephasing_kraus(1, 0.4)}}};
  const LabeledState noisy = qnm::qcore::assemble_network_state(desc);
  const QubitLabel lone = QubitLabel::ancilla(7, 0);
  std::vector<LabeledState> factors = {noisy, qnm::qcore::plus_state(lone)};
  std::vector<Observable> obs = {
      Observable{{QubitLabel::source(0, 0)}, qnm::qcore::pauli_z()},
      Observable{{lone}, qnm::qcore::pauli_x()},
  };
  const auto d = qnm::metro::cov_decompose(factors, obs);
  Matrix sum = Matrix::Zero(2, 2);
  for (const auto& part : d.parts) sum += part;
  CHECK(max_abs(sum - d.total.matrix) < 1e-9);
  CHECK(qnm::qcore::min_eigenvalue((d.parts[0] + d.parts[0].adjoint()) / 2.0) >=
        qnm::tolerances().decomposition_psd);
}

TEST_CASE("overlapping factor registers are rejected") {
  const QubitLabel q = QubitLabel::ancilla(0, 0);
  std::vector<LabeledState> factors = {qnm::qcore::plus_state(q),
                                       qnm::qcore::plus_state(q)};
  std::vector<Observable> obs = {Observable{{q}, qnm::qcore::pauli_z()}};
  CHECK_THROWS_AS(qnm::metro::cov_decompose(factors, obs),
                  qnm::NotProductInput);
  CHECK_THROWS_AS(qnm::metro::cov_decompose({}, obs), qnm::NotProductInput);
}

// ---- per-edge certificate matrices ----------------------------------------------

TEST_CASE("bell pair certificate equals the generator covariance") {
  Hypergraph g(2, {{0, 1}});
  qnm::qcore::NetworkDescription desc{g, ghz_sources(g), {}};
  const auto layout = singleton_layout(2);
  const auto t = qnm::metro::t_decompose(desc, layout);
  REQUIRE(t.parts.size() == 1);
  CHECK(t.blocks[0] == std::vector<int>{0, 1});
  // Half-Z generators on a Bell pair: every covariance entry is 1/4.
  CHECK(max_abs(t.parts[0] - Matrix::Ones(2, 2) / 4.0) < 1e-10);

  const auto report = qnm::metro::verify_t_decomposition(t, desc, layout);
  CHECK(report.holds);
  CHECK(report.diag_residual_max < 1e-10);
  CHECK(report.block_leak_max < 1e-12);
}

TEST_CASE("triangle certificate satisfies all three conditions") {
  Triangle tri;
  qnm::qcore::NetworkDescription desc{tri.g, ghz_sources(tri.g), {}};
  const auto t = qnm::metro::t_decompose(desc, tri.layout);
  REQUIRE(t.parts.size() == 3);
  CHECK(t.blocks[0] == std::vector<int>{0, 1});
  CHECK(t.blocks[1] == std::vector<int>{0, 2});
  CHECK(t.blocks[2] == std::vector<int>{1, 2});

  const auto report = qnm::metro::verify_t_decomposition(t, desc, tri.layout);
  CHECK(report.holds);
  CHECK(report.sum_vs_qfi_min_eig >= qnm::tolerances().psd_gap);
  CHECK(report.diag_residual_max < 1e-8);
  CHECK(report.block_leak_max < 1e-10);
  CHECK(report.part_min_eig >= qnm::tolerances().decomposition_psd);
}

TEST_CASE("shared-vertex channel certificate still verifies") {
  // Path of two pair sources meeting at vertex 1, which is noisy: its
  // dilation ancilla part is split in halves between the incident edges.
  Hypergraph g(3, {{0, 1}, {1, 2}});
  qnm::qcore::NetworkDescription desc{
      g, ghz_sources(g), {{1, qnm::qcore::dephasing_kraus(2, 0.6)}}};
  const auto layout = singleton_layout(3);
  const auto t = qnm::metro::t_decompose(desc, layout);
  const auto report = qnm::metro::verify_t_decomposition(t, desc, layout);
  CHECK(report.holds);
}

TEST_CASE("noisy triangle certificate still verifies") {
  Triangle tri;
  qnm::qcore::NetworkDescription desc{
      tri.g,
      ghz_sources(tri.g),
      {{0, qnm::qcore::depolarizing_kraus(2, 0.2)}}};
  const auto t = qnm::metro::t_decompose(desc, tri.layout);
  const auto report = qnm::metro::verify_t_decomposition(t, desc, tri.layout);
  CHECK(report.holds);
}

TEST_CASE("generators outside their signal's sources are rejected") {
  Hypergraph g(2, {{0, 1}});
  qnm::qcore::NetworkDescription desc{g, ghz_sources(g), {}};
  SignalLayout layout = singleton_layout(2);
  // Signal {0}'s generator illegally acts on vertex 1's qubit.
  layout.generators = {
      Observable{{QubitLabel::source(0, 1)}, qnm::qcore::pauli_z() / 2.0},
      Observable{{QubitLabel::source(0, 1)}, qnm::qcore::pauli_z() / 2.0}};
  CHECK_THROWS_AS(qnm::metro::t_decompose(desc, layout), qnm::NotNetworkForm);
}
