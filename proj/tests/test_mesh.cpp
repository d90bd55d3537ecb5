#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "qforge/construct.hpp"
#include "qforge/iso.hpp"
#include "qforge/json_io.hpp"
#include "qforge/mesh.hpp"

using namespace qf;

namespace {

Quandle z4_3() {
  return validate_quandle({{0, 3, 2, 1}, {2, 1, 0, 3}, {0, 3, 2, 1}, {2, 1, 0, 3}});
}

Quandle projection(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = b;
  return validate_quandle(t);
}

Quandle z5_2() {
  std::vector<std::vector<int>> t(5, std::vector<int>(5));
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) t[x][y] = ((5 - x) + 2 * y) % 5;
  return validate_quandle(t);
}

// Two Z_2 summands, all phi zero, constants c_{0,1} = c_{1,0} = 1.  Its sum is
// the four-element quandle with two swapped two-element orbits.
AffineMesh z2z2_mesh() {
  FinAbGroup z2{{2}};
  AffineMesh m;
  m.groups = {z2, z2};
  m.phis = {{zero_hom(z2, z2), zero_hom(z2, z2)}, {zero_hom(z2, z2), zero_hom(z2, z2)}};
  m.consts = {{0, 1}, {1, 0}};
  return validate_mesh(std::move(m));
}

// Summands (Z_4, Z_2) glued by the doubling map: phi_{0,0} = 2 on Z_4,
// phi_{1,0} embeds Z_2 as {0,2}, both maps into the Z_2 summand are zero.
// Constants c_{0,1} = c_{1,0} = 1.  The sum has six elements, orbits of sizes
// four and two, and is strictly 3-reductive.
AffineMesh six_mesh() {
  FinAbGroup z4{{4}}, z2{{2}};
  AffineMesh m;
  m.groups = {z4, z2};
  m.phis = {{scalar_hom(z4, 2), zero_hom(z4, z2)},
            {make_hom(z2, z4, {{2}}), zero_hom(z2, z2)}};
  m.consts = {{0, 1}, {1, 0}};
  return validate_mesh(std::move(m));
}

// Least m with phi_{i,i}^{m-1} = 0 for all i, if any; the sum of an
// indecomposable mesh is m-reductive exactly for these m.
std::optional<int> mesh_reductivity(const AffineMesh& m, int bound) {
  for (int deg = 1; deg <= bound; ++deg) {
    bool all = true;
    for (std::size_t i = 0; i < m.summands() && all; ++i)
      if (hom_pow(m.phis[i][i], deg - 1) != zero_hom(m.groups[i], m.groups[i])) all = false;
    if (all) return deg;
  }
  return std::nullopt;
}

bool is_zero(const GroupHom& h) { return h == zero_hom(h.source, h.target); }

bool is_bijective(const GroupHom& h) {
  return h.source.size() == h.target.size() && kernel(h).size() == 1;
}

// Partition of the sum's carrier by summand.
std::vector<int> summand_of(const LabeledSum& ls) {
  std::vector<int> out(ls.quandle.n);
  for (int x = 0; x < ls.quandle.n; ++x) out[x] = ls.element_of[x].first;
  return out;
}

}  // namespace

TEST_CASE("mesh validation accepts the handcrafted examples") {
  CHECK_NOTHROW(z2z2_mesh());
  CHECK_NOTHROW(six_mesh());
}

TEST_CASE("mesh violations are reported by condition") {
  FinAbGroup z2{{2}}, z4{{4}};
  // (M2): nonzero diagonal constant.
  {
    AffineMesh m;
    m.groups = {z2};
    m.phis = {{zero_hom(z2, z2)}};
    m.consts = {{1}};
    try {
      validate_mesh(std::move(m));
      FAIL("expected MeshViolation");
    } catch (const MeshViolation& e) {
      CHECK(e.condition == "M2");
    }
  }
  // (M1): 1 - phi_{0,0} not bijective.
  {
    AffineMesh m;
    m.groups = {z2};
    m.phis = {{identity_hom(z2)}};
    m.consts = {{0}};
    try {
      validate_mesh(std::move(m));
      FAIL("expected MeshViolation");
    } catch (const MeshViolation& e) {
      CHECK(e.condition == "M1");
    }
  }
  // (M3): phi_{j,k} phi_{i,j} depends on the middle index.
  {
    AffineMesh m;
    m.groups = {z2, z2};
    m.phis = {{zero_hom(z2, z2), identity_hom(z2)},
              {identity_hom(z2), zero_hom(z2, z2)}};
    m.consts = {{0, 0}, {0, 0}};
    try {
      validate_mesh(std::move(m));
      FAIL("expected MeshViolation");
    } catch (const MeshViolation& e) {
      CHECK(e.condition == "M3");
    }
  }
  // (M4): constants incompatible with the homomorphisms.
  {
    AffineMesh m;
    m.groups = {z4, z4};
    m.phis = {{scalar_hom(z4, 2), scalar_hom(z4, 2)},
              {scalar_hom(z4, 2), scalar_hom(z4, 2)}};
    m.consts = {{0, 1}, {0, 0}};
    try {
      validate_mesh(std::move(m));
      FAIL("expected MeshViolation");
    } catch (const MeshViolation& e) {
      CHECK(e.condition == "M4");
    }
  }
}

TEST_CASE("indecomposability") {
  CHECK(is_indecomposable(z2z2_mesh()));
  CHECK(is_indecomposable(six_mesh()));
  FinAbGroup z4{{4}}, z5{{5}};
  // Single summand: indecomposable iff im(phi_{0,0}) generates.
  AffineMesh dec;
  dec.groups = {z4};
  dec.phis = {{scalar_hom(z4, 2)}};
  dec.consts = {{0}};
  CHECK(!is_indecomposable(validate_mesh(std::move(dec))));
  AffineMesh ind;
  ind.groups = {z5};
  ind.phis = {{scalar_hom(z5, 4)}};
  ind.consts = {{0}};
  CHECK(is_indecomposable(validate_mesh(std::move(ind))));
}

TEST_CASE("sum of the Z_2 x Z_2 mesh is the four-element two-orbit quandle") {
  LabeledSum ls = sum_mesh(z2z2_mesh());
  CHECK(ls.quandle.n == 4);
  CHECK(is_medial(ls.quandle));
  CHECK(quandle_isomorphic(ls.quandle, z4_3()).has_value());
  // Labeling round-trips.
  for (int x = 0; x < 4; ++x) {
    auto [i, a] = ls.element_of[x];
    CHECK(ls.index_of[i][a] == x);
  }
}

TEST_CASE("single-summand sums are Alexander quandles") {
  FinAbGroup z9{{9}};
  AffineMesh m;
  m.groups = {z9};
  m.phis = {{scalar_hom(z9, 3)}};
  m.consts = {{0}};
  LabeledSum ls = sum_mesh(validate_mesh(std::move(m)));
  // a*b = phi(a) + (1-phi)(b), i.e. the Alexander quandle with f = 1 - phi.
  Quandle alex = alexander(z9, scalar_hom(z9, 7));
  CHECK(ls.quandle.mult_ == alex.mult_);
}

TEST_CASE("the six-element sum has the expected structure") {
  LabeledSum ls = sum_mesh(six_mesh());
  CHECK(ls.quandle.n == 6);
  CHECK(is_medial(ls.quandle));
  auto os = orbits(ls.quandle);
  REQUIRE(os.size() == 2);
  CHECK(os[0].size() == 4);
  CHECK(os[1].size() == 2);
  CHECK(reductivity_degree(ls.quandle) == 3);
  // Orbits coincide with summands (the mesh is indecomposable).
  auto so = summand_of(ls);
  auto oo = orbit_of(ls.quandle);
  CHECK(so == oo);
}

TEST_CASE("orbit modules") {
  OrbitModule om = orbit_module(z4_3(), 0);
  CHECK(om.group.orders == std::vector<i64>{2});
  CHECK(om.orbit == std::vector<int>{0, 2});
  CHECK(om.t == identity_hom(om.group));  // 0*2 = 2 in (Z_4,3)
  CHECK(om.from_group[0] == 0);

  OrbitModule latin = orbit_module(z5_2(), 0);
  CHECK(latin.group.size() == 5);
  CHECK(latin.t != identity_hom(latin.group));
  LaurentModule mod = module_of(latin);
  CHECK(is_automorphism(module_phi(mod)));  // connected orbit: 1 - t bijective

  OrbitModule triv = orbit_module(projection(3), 1);
  CHECK(triv.group.size() == 1);
  CHECK(triv.orbit == std::vector<int>{1});
}

TEST_CASE("canonical mesh of the four-element two-orbit quandle") {
  LabeledSum ls = canonical_mesh(z4_3());
  const AffineMesh& m = ls.mesh;
  REQUIRE(m.summands() == 2);
  CHECK(m.groups[0].orders == std::vector<i64>{2});
  CHECK(m.groups[1].orders == std::vector<i64>{2});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(is_zero(m.phis[i][j]));
  CHECK(m.consts[0][1] == 1);
  CHECK(m.consts[1][0] == 1);
  CHECK(ls.quandle.mult_ == z4_3().mult_);
  CHECK(ls.element_of[0] == std::make_pair(0, i64{0}));
  CHECK(ls.element_of[1] == std::make_pair(1, i64{0}));
  CHECK(ls.element_of[2] == std::make_pair(0, i64{1}));
  CHECK(ls.element_of[3] == std::make_pair(1, i64{1}));
}

TEST_CASE("canonical mesh of a latin quandle is one automorphic summand") {
  LabeledSum ls = canonical_mesh(z5_2());
  REQUIRE(ls.mesh.summands() == 1);
  CHECK(ls.mesh.groups[0].size() == 5);
  CHECK(is_bijective(ls.mesh.phis[0][0]));
  CHECK(is_indecomposable(ls.mesh));
  CHECK(!mesh_reductivity(ls.mesh, 10).has_value());
}

TEST_CASE("canonical mesh of a projection quandle is all trivial") {
  LabeledSum ls = canonical_mesh(projection(4));
  REQUIRE(ls.mesh.summands() == 4);
  for (const auto& g : ls.mesh.groups) CHECK(g.size() == 1);
  CHECK(mesh_reductivity(ls.mesh, 3) == 1);
}

TEST_CASE("canonical mesh reductivity matches the quandle on the six-element sum") {
  Quandle q = sum_mesh(six_mesh()).quandle;
  LabeledSum ls = canonical_mesh(q);
  CHECK(is_indecomposable(ls.mesh));
  CHECK(mesh_reductivity(ls.mesh, 10) == 3);
  CHECK(reductivity_degree(q) == 3);
}

TEST_CASE("non-medial input is rejected by canonical_mesh") {
  // Scan 4-element quandles for a non-medial one.
  std::optional<Quandle> nm;
  std::vector<std::vector<int>> rows[4];
  std::vector<int> perm{0, 1, 2, 3};
  do {
    for (int a = 0; a < 4; ++a)
      if (perm[a] == a) rows[a].push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& r0 : rows[0])
    for (const auto& r1 : rows[1])
      for (const auto& r2 : rows[2])
        for (const auto& r3 : rows[3]) {
          if (nm) break;
          try {
            Quandle q = validate_quandle({r0, r1, r2, r3});
            if (!is_medial(q)) nm = q;
          } catch (const AxiomViolation&) {
          }
        }
  REQUIRE(nm.has_value());
  CHECK_THROWS_AS(canonical_mesh(*nm), DomainError);
}

TEST_CASE("mesh json round trip") {
  for (const AffineMesh& m : {z2z2_mesh(), six_mesh()}) {
    AffineMesh back = mesh_from_json(mesh_to_json(m));
    CHECK(back.groups == m.groups);
    CHECK(back.phis == m.phis);
    CHECK(back.consts == m.consts);
  }
}

namespace {

// Pool of indecomposable meshes: handcrafted ones plus canonical meshes of
// random mesh sums.  Canonical meshes are always indecomposable.
std::vector<AffineMesh> indecomposable_pool() {
  std::vector<AffineMesh> pool{z2z2_mesh(), six_mesh()};
  std::mt19937 rng(2026);
  for (int iter = 0; iter < 25; ++iter) {
    AffineMesh m = random_mesh(rng);
    LabeledSum ls = sum_mesh(m);
    pool.push_back(canonical_mesh(ls.quandle).mesh);
  }
  return pool;
}

}  // namespace

TEST_CASE("random meshes: sums are medial and orbits sit inside summands") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 25; ++iter) {
    AffineMesh m = random_mesh(rng);
    LabeledSum ls = sum_mesh(m);
    CHECK(is_medial(ls.quandle));
    auto so = summand_of(ls);
    auto oo = orbit_of(ls.quandle);
    // Each displacement orbit stays within one summand.
    for (int x = 0; x < ls.quandle.n; ++x)
      for (int y = 0; y < ls.quandle.n; ++y)
        if (oo[x] == oo[y]) CHECK(so[x] == so[y]);
    if (is_indecomposable(m)) CHECK(so == oo);
  }
}

TEST_CASE("reductivity of the sum equals the mesh-side degree") {
  for (const AffineMesh& m : indecomposable_pool()) {
    REQUIRE(is_indecomposable(m));
    Quandle q = sum_mesh(m).quandle;
    CHECK(mesh_reductivity(m, q.n + 1) == reductivity_degree(q));
  }
}

TEST_CASE("a zero column entry forces the whole column to zero") {
  for (const AffineMesh& m : indecomposable_pool()) {
    std::size_t k = m.summands();
    for (std::size_t kk = 0; kk < k; ++kk) {
      bool any_zero = false, all_zero = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (is_zero(m.phis[i][kk])) any_zero = true;
        else all_zero = false;
      }
      if (any_zero) CHECK(all_zero);
    }
  }
}

TEST_CASE("2-reductive trichotomy") {
  for (const AffineMesh& m : indecomposable_pool()) {
    Quandle q = sum_mesh(m).quandle;
    auto rd = reductivity_degree(q);
    bool two_red = rd.has_value() && *rd <= 2;
    bool all_zero = true;
    for (const auto& row : m.phis)
      for (const auto& h : row)
        if (!is_zero(h)) all_zero = false;
    bool column_zero = true;
    for (std::size_t j = 0; j < m.summands(); ++j) {
      bool has = false;
      for (std::size_t i = 0; i < m.summands(); ++i)
        if (is_zero(m.phis[i][j])) has = true;
      if (!has) column_zero = false;
    }
    CHECK(two_red == all_zero);
    CHECK(two_red == column_zero);
  }
}

TEST_CASE("nilpotency chain: off-diagonal maps collapse one step earlier") {
  for (const AffineMesh& m : indecomposable_pool()) {
    auto deg = mesh_reductivity(m, 12);
    if (!deg || *deg < 2) continue;
    int d = *deg;
    std::size_t k = m.summands();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        CHECK(is_zero(compose(m.phis[i][j], hom_pow(m.phis[i][i], d - 2))));
        CHECK(is_zero(compose(hom_pow(m.phis[j][j], d - 2), m.phis[i][j])));
      }
  }
}

TEST_CASE("reductive meshes have no bijective connecting maps") {
  for (const AffineMesh& m : indecomposable_pool()) {
    if (!mesh_reductivity(m, 12)) continue;
    std::size_t k = m.summands();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t kk = 0; kk < k; ++kk)
        if (m.groups[i].size() > 1 || m.groups[kk].size() > 1)
          CHECK(!is_bijective(m.phis[i][kk]));
  }
}

TEST_CASE("reductive non-projection meshes have a row with common kernel") {
  for (const AffineMesh& m : indecomposable_pool()) {
    if (!mesh_reductivity(m, 12)) continue;
    bool projection_like = true;
    for (const auto& g : m.groups)
      if (g.size() > 1) projection_like = false;
    if (projection_like) continue;
    std::size_t k = m.summands();
    bool found = false;
    for (std::size_t i = 0; i < k && !found; ++i) {
      std::vector<i64> common;
      for (i64 x = 0; x < m.groups[i].size(); ++x) {
        bool in_all = true;
        for (std::size_t j = 0; j < k && in_all; ++j)
          if (hom_apply_index(m.phis[i][j], x) != 0) in_all = false;
        if (in_all) common.push_back(x);
      }
      if (common.size() > 1) found = true;
    }
    CHECK(found);
  }
}
