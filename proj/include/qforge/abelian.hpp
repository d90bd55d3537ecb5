#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qforge/errors.hpp"

namespace qf {

using Coords = std::vector<i64>;

/// Finite abelian group stored as an explicit product of cyclic factors
/// Z_{n_1} x ... x Z_{n_k}.  The empty list is the trivial group.  Carriers
/// are never canonicalized silently; invariant_factors() exists for display.
/// Elements are addressed either by coordinate vector or by mixed-radix
/// index in [0, size()).
struct FinAbGroup {
  std::vector<i64> orders;

  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<i64> ns);

  i64 size() const;
  std::size_t rank() const { return orders.size(); }

  Coords coords(i64 index) const;
  i64 index(const Coords& c) const;
  Coords reduce(Coords c) const;  // componentwise mod n_i into [0, n_i)

  i64 zero() const { return 0; }
  i64 add(i64 a, i64 b) const;
  i64 neg(i64 a) const;
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 scalar(i64 k, i64 a) const;
  i64 elem_order(i64 a) const;

  bool operator==(const FinAbGroup&) const = default;
};

/// Element as a residue vector together with its parent carrier; used at API
/// and serialization boundaries.  Internal algorithms work on indices.
struct GroupElem {
  FinAbGroup group;
  Coords coords;

  i64 index() const { return group.index(coords); }
  bool operator==(const GroupElem&) const = default;
};

GroupElem make_elem(const FinAbGroup& g, Coords c);

/// Homomorphism as an integer matrix: column c is the image of the c-th
/// standard generator of the source; row r is a target coordinate.  Stored
/// reduced modulo the target orders; equality is matrix equality.
struct GroupHom {
  FinAbGroup source, target;
  std::vector<std::vector<i64>> matrix;  // target.rank() rows, source.rank() cols

  bool operator==(const GroupHom&) const = default;
};

/// Checks well-definedness (n_c * column_c == 0 in target) and reduces.
GroupHom make_hom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<i64>> matrix);
GroupHom identity_hom(const FinAbGroup& g);
GroupHom zero_hom(const FinAbGroup& source, const FinAbGroup& target);
/// Endomorphism of a cyclic-free product by a single scalar (x -> k*x).
GroupHom scalar_hom(const FinAbGroup& g, i64 k);

Coords hom_apply(const GroupHom& h, const Coords& a);
GroupElem hom_apply(const GroupHom& h, const GroupElem& a);
i64 hom_apply_index(const GroupHom& h, i64 a);
/// g after f.
GroupHom compose(const GroupHom& g, const GroupHom& f);
GroupHom hom_add(const GroupHom& a, const GroupHom& b);
GroupHom hom_sub(const GroupHom& a, const GroupHom& b);
GroupHom hom_pow(const GroupHom& h, i64 n);  // endomorphism power, n >= 0

bool is_automorphism(const GroupHom& h);
std::optional<GroupHom> inverse_hom(const GroupHom& h);  // for bijective homs

/// Explicit subgroup: sorted element indices plus the generators it came from.
struct Subgroup {
  FinAbGroup parent;
  std::vector<i64> elements;  // sorted indices, always contains 0
  std::vector<i64> gens;

  i64 size() const { return static_cast<i64>(elements.size()); }
  bool contains(i64 e) const;
  bool operator==(const Subgroup& o) const {
    return parent == o.parent && elements == o.elements;
  }
};

Subgroup subgroup_generated(const FinAbGroup& g, const std::vector<i64>& gens);
Subgroup trivial_subgroup(const FinAbGroup& g);
Subgroup full_subgroup(const FinAbGroup& g);
Subgroup kernel(const GroupHom& h);
Subgroup image(const GroupHom& h);
/// Closure of cyclic subgroups under pairwise join.  Throws CapExceeded when
/// |g| exceeds the element cap.
std::vector<Subgroup> all_subgroups(const FinAbGroup& g, i64 element_cap = 10000);

std::vector<std::vector<i64>> cosets(const FinAbGroup& g, const Subgroup& s);
/// Lexicographically least coordinate vector per coset, in coset order.
std::vector<i64> transversal(const FinAbGroup& g, const Subgroup& s);

/// Z[t,t^-1]-module structure: finite abelian carrier plus an automorphism t.
struct LaurentModule {
  FinAbGroup group;
  GroupHom t;
};

/// Validates that t is a bijective endomorphism of the carrier.
LaurentModule make_module(FinAbGroup group, GroupHom t);
/// phi = 1 - t, the displacement endomorphism of the module.
GroupHom module_phi(const LaurentModule& m);

bool is_t_closed(const LaurentModule& m, const Subgroup& s);
std::vector<Subgroup> submodules(const LaurentModule& m, i64 element_cap = 10000);
bool is_si_module(const LaurentModule& m, i64 element_cap = 10000);
/// Variant reusing a precomputed subgroup list of the carrier, so one lattice
/// scan serves every automorphism of the same group.
bool is_si_module(const LaurentModule& m, const std::vector<Subgroup>& subgroups);
Subgroup socle(const LaurentModule& m, i64 element_cap = 10000);

/// All homomorphisms / isomorphisms between two carriers, by brute force over
/// generator images with order-preservation pruning.
std::vector<GroupHom> enumerate_homs(const FinAbGroup& source, const FinAbGroup& target,
                                     i64 cap = 1u << 20);
std::vector<GroupHom> enumerate_isos(const FinAbGroup& source, const FinAbGroup& target,
                                     i64 element_cap = 256);
std::vector<GroupHom> automorphisms(const FinAbGroup& g, i64 element_cap = 256);

/// Every abelian group of order n, one per isomorphism class, as a product of
/// prime-power cyclic factors in a deterministic order.
std::vector<FinAbGroup> abelian_groups_of_order(i64 n);

/// Display normalization (invariant factor form d_1 | d_2 | ...).
FinAbGroup invariant_factors(const FinAbGroup& g);

/// Abstract finite abelian group given by an addition table on ids
/// 0..count-1; decompose() identifies it with a product of cyclic groups and
/// returns the translation in both directions.
struct AbelianPresentation {
  i64 count = 0;
  i64 zero = 0;
  std::function<i64(i64, i64)> add;
};

struct Decomposition {
  FinAbGroup group;
  std::vector<i64> to_index;    // presentation id -> group element index
  std::vector<i64> from_index;  // group element index -> presentation id
};

/// Smith-normal-form based; verifies the resulting maps are mutually inverse
/// bijections and throws DomainError if the presentation is not an abelian
/// group.
Decomposition decompose_abelian(const AbelianPresentation& p);

}  // namespace qf
