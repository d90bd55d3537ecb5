#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qf {

using i64 = long long;

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by validate_quandle; carries the failed axiom and a witness.
struct AxiomViolation : std::runtime_error {
  std::string kind;              // "idempotency", "left-quasigroup", "left-distributivity", "shape"
  std::array<int, 3> witness{};  // elements involved (unused slots = -1)
  AxiomViolation(std::string k, std::array<int, 3> w)
      : std::runtime_error("quandle axiom violated: " + k), kind(std::move(k)), witness(w) {}
};

/// Thrown by validate_mesh; condition is "M1".."M4" or "shape".
struct MeshViolation : std::runtime_error {
  std::string condition;
  std::array<int, 4> indices{};
  MeshViolation(std::string c, std::array<int, 4> idx)
      : std::runtime_error("affine mesh condition violated: " + c),
        condition(std::move(c)),
        indices(idx) {}
};

/// Thrown when a siq specification fails one of its invariants.
struct SpecViolation : std::runtime_error {
  explicit SpecViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when two routes that must agree (table isomorphism vs mesh
/// homology, fast path vs linear-system engine) disagree.
struct ConsistencyFailure : std::logic_error {
  explicit ConsistencyFailure(const std::string& what) : std::logic_error(what) {}
};

struct ShapeMismatch : std::invalid_argument {
  explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qf
