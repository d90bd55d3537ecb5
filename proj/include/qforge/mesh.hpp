#pragma once

#include <random>

#include "qforge/abelian.hpp"
#include "qforge/quandle.hpp"

namespace qf {

/// Affine mesh (A_i; phi_{i,j}; c_{i,j}): a family of abelian groups with
/// connecting homomorphisms phi_{i,j}: A_i -> A_j and constants c_{i,j} in
/// A_j, subject to conditions (M1)-(M4) checked by validate_mesh.
struct AffineMesh {
  std::vector<FinAbGroup> groups;
  std::vector<std::vector<GroupHom>> phis;  // phis[i][j] : A_i -> A_j
  std::vector<std::vector<i64>> consts;     // consts[i][j] = index of c_{i,j} in A_j

  std::size_t summands() const { return groups.size(); }
};

/// Verifies shapes and (M1)-(M4); throws MeshViolation naming the condition.
AffineMesh validate_mesh(AffineMesh raw);
/// Each A_j generated by all c_{i,j} together with all images phi_{i,j}(A_i).
bool is_indecomposable(const AffineMesh& m);

/// Sum of a mesh together with the labeling between quandle indices and
/// (summand, group element) pairs.
struct LabeledSum {
  AffineMesh mesh;
  Quandle quandle;
  std::vector<std::pair<int, i64>> element_of;  // quandle index -> (summand, elem index)
  std::vector<std::vector<int>> index_of;       // [summand][elem index] -> quandle index
};

/// a*b = c_{i,j} + phi_{i,j}(a) + (1-phi_{j,j})(b); division via the inverse
/// of 1-phi_{j,j}.  The result passes validate_quandle and is medial.
LabeledSum sum_mesh(const AffineMesh& m);

/// Orbit of e with the abelian structure a+b = alpha_a(b) built from stored
/// displacement witnesses, identified with an explicit FinAbGroup.
struct OrbitModule {
  std::vector<int> orbit;      // quandle indices, BFS order from e; orbit[0] = e
  int e = 0;
  FinAbGroup group;            // abstract carrier
  std::vector<i64> to_group;   // position in orbit -> group element index
  std::vector<int> from_group; // group element index -> quandle index
  GroupHom t;                  // action t.a = e*a transported to the group
};

OrbitModule orbit_module(const Quandle& q, int e);
LaurentModule module_of(const OrbitModule& om);

/// Canonical mesh over the least-index transversal:
/// phi_{e,f}(x) = x*f - e*f, c_{e,f} = e*f (arithmetic in the orbit module
/// of f).  Indecomposable, and its sum is isomorphic to Q.
LabeledSum canonical_mesh(const Quandle& q);

/// Random valid mesh for property tests: small groups, phis completed via
/// (M3), constants via backtracking against (M4).
AffineMesh random_mesh(std::mt19937& rng, int max_summands = 3, i64 max_group = 8);

}  // namespace qf
