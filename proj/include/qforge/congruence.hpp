#pragma once

#include "qforge/mesh.hpp"

namespace qf {

/// Partition of quandle elements compatible with * and \.  Stored as a
/// class-id vector normalized so ids appear in increasing element order.
struct Congruence {
  std::vector<int> cls;  // element -> class id, normalized

  int size() const { return static_cast<int>(cls.size()); }
  bool related(int a, int b) const { return cls[a] == cls[b]; }
  int block_count() const;
  bool is_diagonal() const;
  bool is_full() const;
  std::vector<std::vector<int>> blocks() const;  // sorted blocks in id order
  std::vector<i64> block_size_profile() const;   // sorted block sizes

  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& o) const { return cls < o.cls; }
};

Congruence diagonal_congruence(int n);
Congruence full_congruence(int n);
Congruence congruence_from_classes(std::vector<int> cls);  // normalizes ids
Congruence meet(const Congruence& a, const Congruence& b);
Congruence join(const Congruence& a, const Congruence& b);
bool leq(const Congruence& a, const Congruence& b);  // a refines b

/// Is the partition compatible with the quandle operations?
bool is_congruence(const Quandle& q, const Congruence& c);

/// Least congruence collapsing (a,b); union-find + worklist closure.
Congruence principal_congruence(const Quandle& q, int a, int b);
/// Least congruence collapsing every listed pair.
Congruence congruence_generated(const Quandle& q, const std::vector<std::pair<int, int>>& pairs);

/// Full lattice as a sorted set: join-closure of the principal congruences
/// plus the diagonal.  Throws CapExceeded past the cap.
std::vector<Congruence> all_congruences(const Quandle& q, i64 cap = 100000);

/// Meet of all principal congruences over distinct pairs; the monolith
/// proper exists only when that meet is non-diagonal.
Congruence principal_meet_serial(const Quandle& q);
Congruence principal_meet(const Quandle& q);  // OpenMP when available
std::optional<Congruence> monolith(const Quandle& q);
bool is_subdirectly_irreducible(const Quandle& q);
bool is_simple(const Quandle& q);

Congruence orbit_congruence_pi(const Quandle& q);
Congruence lambda_congruence(const Quandle& q);
Congruence theta_congruence(const Quandle& q);

/// Congruences below the orbit congruence of a labeled sum correspond to
/// families (M_i) of t-closed subgroups with phi_{k,j}(M_k) contained in M_j.
struct SubmoduleFamily {
  std::vector<Subgroup> parts;  // parts[i] <= groups[i]
};

bool family_condition_holds(const AffineMesh& m, const SubmoduleFamily& f);
Congruence congruence_from_family(const LabeledSum& ls, const SubmoduleFamily& f);
SubmoduleFamily family_from_congruence(const LabeledSum& ls, const Congruence& rho);

/// The three families of t-closed subgroups that always satisfy the family
/// condition: kernels Ker(phi_{i,j0}), stable images of the diagonal maps,
/// and their pushforwards along phi_{i0,j}.
struct KernelFamilies {
  SubmoduleFamily kernels;        // M_i = Ker(phi_{i,j0})
  SubmoduleFamily stable_images;  // M_i = intersection of phi_{i,i}^n(A_i)
  SubmoduleFamily pushforwards;   // M_j = phi_{i0,j}(stable image of A_{i0})
};

KernelFamilies kernel_families(const LabeledSum& ls, int i0 = 0, int j0 = 0);

}  // namespace qf
