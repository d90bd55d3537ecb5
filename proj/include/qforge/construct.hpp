#pragma once

#include <string>

#include "qforge/congruence.hpp"

namespace qf {

Quandle projection_quandle(int n);
/// x*y = (1-f)(x) + f(y) for an automorphism f.
Quandle alexander(const FinAbGroup& a, const GroupHom& f);

/// Input to the siq construction: an SI module (A,t) plus representatives C
/// of pairwise distinct nonzero cosets of phi(A) = (1-t)(A).
struct SiqSpec {
  LaurentModule module;
  std::vector<i64> C;  // element indices in A
};

/// Checks the construction's invariants: distinct cosets, generation of A by
/// C together with phi(A), phi non-injective when C is nonempty, module SI.
/// Throws SpecViolation naming the failed invariant.  allow_non_si skips the
/// SI-module check (for experimentation; SI claims are then void).
SiqSpec validate_siq_spec(LaurentModule module, std::vector<i64> C, bool allow_non_si = false);

/// Carrier: all of A first (group element order), then one phi(A) block per
/// element of C, in C order.  Returns the quandle together with its defining
/// mesh (one summand A plus |C| summands phi(A), constants per the mesh
/// translation of the construction).
LabeledSum siq(const SiqSpec& spec);

/// The mesh underlying siq(A,t,C): A_0 = A, A_i = phi(A) for each c in C;
/// phi_{0,0} = phi_{i,j} = phi, phi_{i,0} = inclusion, phi_{0,j} = phi^2;
/// c_{i,0} = c_i, c_{0,i} = -phi(c_i), c_{i,j} = phi(c_i - c_j).
AffineMesh siq_mesh(const SiqSpec& spec);

struct GalleryItem {
  std::string name;
  Quandle quandle;
  // Provenance for items that come from a mesh or a siq spec.
  std::optional<AffineMesh> mesh;
  std::optional<SiqSpec> spec;
  bool expect_involutory = false;
};

/// Every concrete finite example used by the test suite: the (Z_4,3) pair of
/// orbits, the two 6- and 8-element SI quandles, the Z_49 pair, small latin,
/// projection, involutory and 2-reductive instances.
std::vector<GalleryItem> gallery();

/// Convenience builders used by the gallery and the tests.
Quandle alexander_cyclic(i64 n, i64 t);          // (Z_n, t)
SiqSpec siq_spec_cyclic(i64 n, i64 t, std::vector<i64> C, bool allow_non_si = false);

}  // namespace qf
