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

#ifndef QNM_ERRORS_HPP_
#define QNM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qnm {

// Base class for every error raised by the library.  Each concrete type
// corresponds to one failure mode so callers can catch selectively.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- graph / layout errors -------------------------------------------------

// A vertex id is outside the graph's vertex set.
class UnknownVertex : public Error {
 public:
  using Error::Error;
};

// A signal subset touches no hyperedge, so its influence count is undefined.
// Bound computations that can absorb this fall back to an influence of 1
// and flag the signal as isolated.
class NoIncidentEdge : public Error {
 public:
  using Error::Error;
};

// Structural validation failure (duplicate edge, empty signal, weight/signal
// length mismatch, edge not a vertex subset, ...).
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

// ---- state errors ----------------------------------------------------------

// A state, operator, or register has an unusable size (zero qubits where at
// least one is required, dimension not a power of two, ...).
class InvalidSize : public Error {
 public:
  using Error::Error;
};

// Qubit labels do not match between an operator/state pair, or a register
// contains duplicates.
class LabelMismatch : public Error {
 public:
  using Error::Error;
};

// A qubit label is not present in the state's register.
class UnknownQubit : public Error {
 public:
  using Error::Error;
};

// An operator's declared support does not match its matrix dimension.
class SupportMismatch : public Error {
 public:
  using Error::Error;
};

// A probability distribution fails validation (negative weight, sum far from
// one, empty mixture, non-CPTP Kraus list, non-Hermitian observable, ...).
class BadDistribution : public Error {
 public:
  using Error::Error;
};

// Projecting onto an event of (numerically) zero probability.
class ZeroProbability : public Error {
 public:
  using Error::Error;
};

// ---- resource guards -------------------------------------------------------

// The request exceeds the dense-simulation size limits.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// ---- decomposition errors --------------------------------------------------

// Input to the subsystem covariance decomposition is not an explicit product.
class NotProductInput : public Error {
 public:
  using Error::Error;
};

// Input to the edge/vertex decomposition is not in assembled network form.
class NotNetworkForm : public Error {
 public:
  using Error::Error;
};

// ---- witness errors --------------------------------------------------------

// Circuit geometry is not one the requested closed form covers.
class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

// Input state is not an explicit product over sites.
class NotSeparableInput : public Error {
 public:
  using Error::Error;
};

// ---- protocol errors -------------------------------------------------------

// All sensor weights vanish; the weight vector cannot be normalized.
class ZeroWeight : public Error {
 public:
  using Error::Error;
};

// The designated center is a cut vertex of the sensing network.
class CutVertexCenter : public Error {
 public:
  using Error::Error;
};

// The measurement recursion did not converge to a single coherent signal
// state on the center (diagnostic for configs violating the cut-vertex
// precondition).
class NotConvergent : public Error {
 public:
  using Error::Error;
};

// The success probability is at a degenerate point (0 or 1), so the Fisher
// information of the estimate is undefined there.
class DegenerateP : public Error {
 public:
  using Error::Error;
};

// ---- i/o errors ------------------------------------------------------------

// Malformed or schema-violating scenario/config payload.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnm

#endif  // QNM_ERRORS_HPP_
