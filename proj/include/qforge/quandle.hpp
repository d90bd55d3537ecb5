#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qforge/errors.hpp"

namespace qf {

/// Finite left quasigroup given by its multiplication table; division is the
/// row inverse.  Construction goes through validate_quandle which also checks
/// idempotency and left distributivity.
struct Quandle {
  int n = 0;
  std::vector<int> mult_;  // row-major n*n
  std::vector<int> ldiv_;

  int size() const { return n; }
  int mult(int a, int b) const { return mult_[a * n + b]; }
  int ldiv(int a, int b) const { return ldiv_[a * n + b]; }

  bool operator==(const Quandle&) const = default;
};

Quandle validate_quandle(const std::vector<std::vector<int>>& table);
Quandle validate_quandle_flat(int n, std::vector<int> mult);

struct Permutation {
  std::vector<int> images;

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int x) const { return images[x]; }
  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return images < o.images; }
};

Permutation identity_perm(int n);
Permutation compose(const Permutation& f, const Permutation& g);  // f after g
Permutation inverse(const Permutation& p);
std::vector<int> cycle_type(const Permutation& p);  // sorted cycle lengths

Permutation left_translation(const Quandle& q, int a);
/// {L_a L_0^-1 : a in Q}; same closure as all pairs L_a L_b^-1.
std::vector<Permutation> displacement_generators(const Quandle& q);

struct MedialWitness {
  int identity_index;  // which of the three mediality identities failed (0..2)
  std::array<int, 4> elems;
};

/// Checks all three mediality identities over all quadruples.
std::optional<MedialWitness> medial_check_serial(const Quandle& q);
std::optional<MedialWitness> medial_check(const Quandle& q);  // OpenMP when available
bool is_medial(const Quandle& q);

std::vector<std::vector<int>> orbits(const Quandle& q);
std::vector<int> orbit_of(const Quandle& q);  // element -> orbit id (by least member order)
bool is_connected(const Quandle& q);
bool is_latin(const Quandle& q);
bool is_involutory(const Quandle& q);

/// Least m <= n+1 with (((x*y)*y)...)*y = y (m factors of y) for all pairs.
std::optional<int> reductivity_degree(const Quandle& q);
/// Distinct a,b in one orbit with equal rows.
std::optional<std::pair<int, int>> quasi_reductive_witness(const Quandle& q);
bool is_quasi_reductive(const Quandle& q);

/// Materialized closure of a permutation group, with a cap.
struct PermGroupClosure {
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // sorted; empty when capped
  bool capped = false;
};

PermGroupClosure close_group(const std::vector<Permutation>& gens, i64 cap = 100000);
PermGroupClosure lmlt_closure(const Quandle& q, i64 cap = 100000);
PermGroupClosure dis_closure(const Quandle& q, i64 cap = 100000);

/// Lower-central-series length of LMlt(Q); absent when not nilpotent.
/// Throws CapExceeded when the closure does not materialize under the cap.
std::optional<int> lmlt_nilpotency_degree(const Quandle& q, i64 cap = 100000);

}  // namespace qf
