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

#include "qnm/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnm/errors.hpp"
#include "qnm/tolerances.hpp"

namespace qnm::metro {

using qcore::cdouble;
using qcore::LabeledState;
using qcore::Matrix;
using qcore::Observable;
using qcore::Vector;

std::vector<Observable> standard_generators(
    const netgraph::Hypergraph& g, const netgraph::SignalLayout& layout,
    double scale) {
  layout.validate(g);
  std::vector<Observable> out;
  out.reserve(layout.signals.size());
  for (const auto& signal : layout.signals) {
    std::vector<qcore::QubitLabel> support;
    for (int v : signal) {
      for (int e : g.incident_edges(v)) {
        support.push_back(qcore::QubitLabel::source(e, v));
      }
    }
    std::sort(support.begin(), support.end());
    const int m = static_cast<int>(support.size());
    if (m > qcore::kMaxMixedQubits) {
      throw TooLarge("signal generator touches " + std::to_string(m) +
                     " qubits; dense form capped at " +
                     std::to_string(qcore::kMaxMixedQubits));
    }
    const Eigen::Index d = Eigen::Index{1} << m;
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      double z = 0.0;
      for (int j = 0; j < m; ++j) {
        z += ((b >> (m - 1 - j)) & 1) ? -1.0 : +1.0;
      }
      h(b, b) = scale * z;
    }
    out.push_back(Observable{std::move(support), std::move(h)});
  }
  return out;
}

namespace {

std::vector<Observable> resolved_generators(
    const netgraph::Hypergraph& g, const netgraph::SignalLayout& layout) {
  if (layout.generators.empty()) return standard_generators(g, layout);
  if (layout.generators.size() != layout.signals.size()) {
    throw InvalidSize("expected one generator per signal");
  }
  return layout.generators;
}

// <k|H_s|l> for every eigenvector pair, as G_s = V^dagger (H_s V).
Matrix generator_in_eigenbasis(const Observable& h, const LabeledState& rho,
                               const Matrix& eigenvectors) {
  const auto pos = rho.positions_of(h.support);
  const Matrix hv = qcore::apply_embedded_left(h.matrix, eigenvectors,
                                               rho.qubit_count(), pos);
  return eigenvectors.adjoint() * hv;
}

QfiMatrix qfi_pure(const LabeledState& rho,
                   const std::vector<Observable>& generators) {
  const int m = static_cast<int>(generators.size());
  const Vector& psi = rho.amplitudes();
  std::vector<Vector> images;
  std::vector<double> means;
  images.reserve(static_cast<std::size_t>(m));
  means.reserve(static_cast<std::size_t>(m));
  for (const auto& h : generators) {
    h.validate();
    const auto pos = rho.positions_of(h.support);
    images.push_back(
        qcore::apply_embedded(h.matrix, psi, rho.qubit_count(), pos));
    means.push_back(psi.dot(images.back()).real());
  }
  Eigen::MatrixXd f(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = s; t < m; ++t) {
      const double cross =
          images[static_cast<std::size_t>(s)]
              .dot(images[static_cast<std::size_t>(t)])
              .real();
      const double val = 4.0 * (cross - means[static_cast<std::size_t>(s)] *
                                            means[static_cast<std::size_t>(t)]);
      f(s, t) = val;
      f(t, s) = val;
    }
  }
  return QfiMatrix{std::move(f)};
}

struct EigenData {
  Eigen::VectorXd lambda;
  Matrix vectors;
  Eigen::MatrixXd weight;  // (l_k - l_l)^2 / (l_k + l_l), 0 below cutoff
};

EigenData eigendata_of(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition of the state failed");
  }
  EigenData d;
  d.lambda = es.eigenvalues();
  d.vectors = es.eigenvectors();
  const Eigen::Index n = d.lambda.size();
  const double eps = tolerances().qfi_rank_cutoff;
  d.weight = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double sum = d.lambda(k) + d.lambda(l);
      if (sum > eps) {
        const double diff = d.lambda(k) - d.lambda(l);
        d.weight(k, l) = diff * diff / sum;
      }
    }
  }
  return d;
}

QfiMatrix qfi_from_eigendata(const EigenData& ed,
                             const std::vector<Matrix>& gs) {
  const int m = static_cast<int>(gs.size());
  Eigen::MatrixXd f(m, m);
  for (int s = 0; s < m; ++s) {
    for (int t = s; t < m; ++t) {
      const double val =
          2.0 *
          (ed.weight.array() *
           (gs[static_cast<std::size_t>(s)].array() *
            gs[static_cast<std::size_t>(t)].array().conjugate())
               .real())
              .sum();
      f(s, t) = val;
      f(t, s) = val;
    }
  }
  return QfiMatrix{std::move(f)};
}

}  // namespace

QfiMatrix qfi_matrix(const LabeledState& rho,
                     const std::vector<Observable>& generators) {
  if (generators.empty()) {
    throw InvalidSize("at least one generator is required");
  }
  if (rho.is_pure()) return qfi_pure(rho, generators);
  const EigenData ed = eigendata_of(rho.density());
  std::vector<Matrix> gs;
  gs.reserve(generators.size());
  for (const auto& h : generators) {
    h.validate();
    gs.push_back(generator_in_eigenbasis(h, rho, ed.vectors));
  }
  return qfi_from_eigendata(ed, gs);
}

QfiWithSlds qfi_matrix_with_slds(const LabeledState& rho,
                                 const std::vector<Observable>& generators) {
  if (generators.empty()) {
    throw InvalidSize("at least one generator is required");
  }
  if (rho.qubit_count() > qcore::kMaxMixedQubits) {
    throw TooLarge("symmetric logarithmic derivatives need the density form");
  }
  const EigenData ed = eigendata_of(rho.to_density());
  const Eigen::Index n = ed.lambda.size();
  const double eps = tolerances().qfi_rank_cutoff;
  QfiWithSlds out;
  std::vector<Matrix> gs;
  gs.reserve(generators.size());
  for (const auto& h : generators) {
    h.validate();
    gs.push_back(generator_in_eigenbasis(h, rho, ed.vectors));
  }
  out.qfi = qfi_from_eigendata(ed, gs);
  for (const auto& g : gs) {
    // d rho = -i [H, rho] has eigenbasis entries -i (l_l - l_k) G_kl, and
    // the SLD solves d rho = (L rho + rho L)/2:
    //   L_kl = 2 (d rho)_kl / (l_k + l_l) above the rank cutoff.
    Matrix l = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double sum = ed.lambda(k) + ed.lambda(j);
        if (sum > eps) {
          l(k, j) = cdouble(0, -2.0) * (ed.lambda(j) - ed.lambda(k)) *
                    g(k, j) / sum;
        }
      }
    }
    out.slds.push_back(ed.vectors * l * ed.vectors.adjoint());
  }
  return out;
}

double mse_lower_bound(const netgraph::Hypergraph& g,
                       const netgraph::SignalLayout& layout,
                       const LabeledState& rho, int nu) {
  if (nu < 1) {
    throw InvalidSize("repetition count must be at least 1");
  }
  layout.validate(g);
  const auto generators = resolved_generators(g, layout);
  double bound = 0.0;
  for (int s = 0; s < layout.signal_count(); ++s) {
    const double alpha = layout.weights[static_cast<std::size_t>(s)];
    if (alpha == 0.0) continue;
    const auto inf = netgraph::influence_or_isolated(g, layout, s);
    const double var =
        qcore::variance(rho, generators[static_cast<std::size_t>(s)]);
    if (var < tolerances().variance_floor) {
      return kInfiniteBound;
    }
    bound += alpha * alpha / (4.0 * nu * inf.k * var);
  }
  return bound;
}

QfiMatrix qfi_diag_bound(const netgraph::Hypergraph& g,
                         const netgraph::SignalLayout& layout,
                         const LabeledState& rho) {
  layout.validate(g);
  const auto generators = resolved_generators(g, layout);
  const int m = layout.signal_count();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (int s = 0; s < m; ++s) {
    const auto inf = netgraph::influence_or_isolated(g, layout, s);
    f(s, s) = 4.0 * inf.k *
              qcore::variance(rho, generators[static_cast<std::size_t>(s)]);
  }
  return QfiMatrix{std::move(f)};
}

BoundCertificate verify_qfi_bound(const netgraph::Hypergraph& g,
                                  const netgraph::SignalLayout& layout,
                                  const LabeledState& rho) {
  layout.validate(g);
  const auto generators = resolved_generators(g, layout);
  BoundCertificate cert;
  const int m = layout.signal_count();
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(m, m);
  for (int s = 0; s < m; ++s) {
    const auto inf = netgraph::influence_or_isolated(g, layout, s);
    const double var =
        qcore::variance(rho, generators[static_cast<std::size_t>(s)]);
    cert.k_values.push_back(inf.k);
    cert.isolated.push_back(inf.isolated);
    cert.variances.push_back(var);
    diag(s, s) = 4.0 * inf.k * var;
  }
  const QfiMatrix qfi = qfi_matrix(rho, generators);
  cert.qfi_trace = qfi.matrix.trace();
  const Eigen::MatrixXd gap = diag - qfi.matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gap);
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition of the bound gap failed");
  }
  cert.gap_min_eig = es.eigenvalues().minCoeff();
  cert.holds = cert.gap_min_eig >= tolerances().psd_gap;
  return cert;
}

MatrixCrbResult matrix_crb(const QfiMatrix& qfi, int nu,
                           const std::vector<double>& alpha) {
  if (nu < 1) {
    throw InvalidSize("repetition count must be at least 1");
  }
  if (static_cast<int>(alpha.size()) != qfi.size()) {
    throw InvalidSize("weight vector length does not match the matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qfi.matrix);
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition of the information matrix failed");
  }
  const Eigen::VectorXd evals = es.eigenvalues();
  const Eigen::VectorXd a =
      es.eigenvectors().transpose() *
      Eigen::Map<const Eigen::VectorXd>(alpha.data(),
                                        static_cast<Eigen::Index>(alpha.size()));
  const double cutoff =
      tolerances().singular_qfi * std::max(1.0, evals.cwiseAbs().maxCoeff());
  MatrixCrbResult result;
  double quad = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > cutoff) {
      quad += a(i) * a(i) / evals(i);
    } else {
      result.used_pseudo_inverse = true;
    }
  }
  result.value = quad / nu;
  return result;
}

}  // namespace qnm::metro
