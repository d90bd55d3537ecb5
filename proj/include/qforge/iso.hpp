#pragma once

#include "qforge/congruence.hpp"

namespace qf {

/// Cheap isomorphism invariants used to prune backtracking.
struct InvariantFingerprint {
  int size = 0;
  std::vector<int> orbit_sizes;                     // sorted
  std::optional<int> reductivity;
  bool involutory = false;
  std::vector<std::vector<int>> row_cycle_types;    // sorted multiset of L_a cycle types
  std::optional<i64> congruence_count;              // filled only on request

  bool operator==(const InvariantFingerprint&) const = default;
};

InvariantFingerprint fingerprint(const Quandle& q);
/// Fingerprint plus the congruence count (capped lattice enumeration).
InvariantFingerprint fingerprint_with_lattice(const Quandle& q, i64 cap = 100000);

/// Bijection f with f(a*b) = f(a)*f(b); found by orbit-aware backtracking.
std::optional<std::vector<int>> quandle_isomorphic(const Quandle& a, const Quandle& b);

/// Homology witness between meshes: summand permutation sigma, group
/// isomorphisms psi_i : A_i -> A'_{sigma(i)}, shift constants d_i.
struct HomologyWitness {
  std::vector<int> sigma;
  std::vector<GroupHom> psi;
  std::vector<i64> d;
};

/// (H1) psi_j phi_{i,j} = phi'_{sigma i, sigma j} psi_i and
/// (H2) psi_j(c_{i,j}) = c'_{sigma i, sigma j} + phi'_{sigma i, sigma j}(d_i)
///                      - phi'_{sigma j, sigma j}(d_j).
std::optional<HomologyWitness> are_homologous(const AffineMesh& a, const AffineMesh& b,
                                              i64 aut_cap = 256);

/// Sums of meshes are isomorphic iff the meshes are homologous; this runs
/// both decision procedures and throws ConsistencyFailure if they disagree.
bool iso_equiv_check(const Quandle& a, const Quandle& b);

/// Shape of a mesh eligible for the cyclic-orbit criterion: main summand
/// Z_{p^s}, phi = p^k * unit, the other summands its image under phi.
struct CyclicShape {
  i64 p = 0, s = 0, k = 0, a = 1;  // phi = p^k * a on Z_{p^s}, gcd(a,p)=1
  std::vector<i64> c;              // c_{i,0} for the non-main summands
};

CyclicShape extract_cyclic_shape(const AffineMesh& m);

/// Homology decision specialized to cyclic shapes: true iff some unit u and
/// pairing sigma of the non-main summands satisfy c'_{sigma(i)} = u * c_i
/// mod p^k for all i.  When the summand count exceeds ceil(s/k) this is
/// cross-checked against the bilinear congruence scan (some sigma with
/// c_i c'_{sigma(j)} - c_j c'_{sigma(i)} = 0 mod p^s for all i,j) and a
/// disagreement throws ConsistencyFailure; ShapeMismatch off-hypothesis.
bool cyclic_iso_criterion(const AffineMesh& a, const AffineMesh& b);

}  // namespace qf
