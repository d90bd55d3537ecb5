#include "qforge/mesh.hpp"

#include <algorithm>
#include <numeric>

namespace qf {

AffineMesh validate_mesh(AffineMesh m) {
  std::size_t k = m.groups.size();
  if (k == 0) throw MeshViolation("shape", {-1, -1, -1, -1});
  if (m.phis.size() != k || m.consts.size() != k) throw MeshViolation("shape", {-1, -1, -1, -1});
  for (std::size_t i = 0; i < k; ++i) {
    if (m.phis[i].size() != k || m.consts[i].size() != k)
      throw MeshViolation("shape", {static_cast<int>(i), -1, -1, -1});
    for (std::size_t j = 0; j < k; ++j) {
      if (m.phis[i][j].source != m.groups[i] || m.phis[i][j].target != m.groups[j])
        throw MeshViolation("shape", {static_cast<int>(i), static_cast<int>(j), -1, -1});
      if (m.consts[i][j] < 0 || m.consts[i][j] >= m.groups[j].size())
        throw MeshViolation("shape", {static_cast<int>(i), static_cast<int>(j), -1, -1});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    GroupHom one_minus = hom_sub(identity_hom(m.groups[i]), m.phis[i][i]);
    if (!is_automorphism(one_minus))
      throw MeshViolation("M1", {static_cast<int>(i), -1, -1, -1});
    if (m.consts[i][i] != 0) throw MeshViolation("M2", {static_cast<int>(i), -1, -1, -1});
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t j2 = j + 1; j2 < k; ++j2)
          if (compose(m.phis[j][c], m.phis[i][j]) != compose(m.phis[j2][c], m.phis[i][j2]))
            throw MeshViolation("M3", {static_cast<int>(i), static_cast<int>(j),
                                       static_cast<int>(j2), static_cast<int>(c)});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < k; ++c) {
        i64 lhs = hom_apply_index(m.phis[j][c], m.consts[i][j]);
        i64 rhs = hom_apply_index(m.phis[c][c],
                                  m.groups[c].sub(m.consts[i][c], m.consts[j][c]));
        if (lhs != rhs)
          throw MeshViolation("M4", {static_cast<int>(i), static_cast<int>(j),
                                     static_cast<int>(c), -1});
      }
  return m;
}

bool is_indecomposable(const AffineMesh& m) {
  std::size_t k = m.summands();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<i64> gens;
    for (std::size_t i = 0; i < k; ++i) {
      gens.push_back(m.consts[i][j]);
      // c_{i,j} + im(phi_{i,j}) contributes the coset; together with c_{i,j}
      // itself the generated subgroup is <all c_{i,j}, all images>.
      for (std::size_t g = 0; g < m.groups[i].rank(); ++g) {
        Coords e(m.groups[i].rank(), 0);
        e[g] = 1;
        gens.push_back(m.groups[j].add(m.consts[i][j],
                                       hom_apply_index(m.phis[i][j], m.groups[i].index(e))));
      }
    }
    if (subgroup_generated(m.groups[j], gens).size() != m.groups[j].size()) return false;
  }
  return true;
}

LabeledSum sum_mesh(const AffineMesh& m) {
  std::size_t k = m.summands();
  LabeledSum ls;
  ls.mesh = m;
  std::vector<int> start(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i)
    start[i + 1] = start[i] + static_cast<int>(m.groups[i].size());
  int n = start[k];
  ls.element_of.resize(n);
  ls.index_of.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    ls.index_of[i].resize(m.groups[i].size());
    for (i64 a = 0; a < m.groups[i].size(); ++a) {
      ls.element_of[start[i] + a] = {static_cast<int>(i), a};
      ls.index_of[i][a] = start[i] + static_cast<int>(a);
    }
  }
  std::vector<GroupHom> one_minus, one_minus_inv;
  for (std::size_t j = 0; j < k; ++j) {
    one_minus.push_back(hom_sub(identity_hom(m.groups[j]), m.phis[j][j]));
    auto inv = inverse_hom(one_minus.back());
    if (!inv) throw MeshViolation("M1", {static_cast<int>(j), -1, -1, -1});
    one_minus_inv.push_back(std::move(*inv));
  }
  std::vector<int> mult(static_cast<std::size_t>(n) * n), ldiv(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    auto [i, a] = ls.element_of[x];
    for (int y = 0; y < n; ++y) {
      auto [j, b] = ls.element_of[y];
      i64 prod = m.groups[j].add(m.consts[i][j],
                                 m.groups[j].add(hom_apply_index(m.phis[i][j], a),
                                                 hom_apply_index(one_minus[j], b)));
      mult[static_cast<std::size_t>(x) * n + y] = ls.index_of[j][prod];
      i64 quot = hom_apply_index(
          one_minus_inv[j],
          m.groups[j].sub(b, m.groups[j].add(hom_apply_index(m.phis[i][j], a), m.consts[i][j])));
      ldiv[static_cast<std::size_t>(x) * n + y] = ls.index_of[j][quot];
    }
  }
  ls.quandle = validate_quandle_flat(n, std::move(mult));
  if (ls.quandle.ldiv_ != ldiv)
    throw ConsistencyFailure("mesh sum division disagrees with table inversion");
  return ls;
}

OrbitModule orbit_module(const Quandle& q, int e) {
  auto gens = displacement_generators(q);
  std::vector<Permutation> allgens = gens;
  for (const auto& g : gens) allgens.push_back(inverse(g));
  // BFS storing a witness alpha_a with alpha_a(e) = a.
  std::vector<int> pos(q.n, -1);
  std::vector<int> orbit{e};
  std::vector<Permutation> alpha{identity_perm(q.n)};
  pos[e] = 0;
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    int x = orbit[head];
    for (const auto& g : allgens) {
      int y = g.images[x];
      if (pos[y] == -1) {
        pos[y] = static_cast<int>(orbit.size());
        orbit.push_back(y);
        alpha.push_back(compose(g, alpha[head]));
      }
    }
  }
  i64 count = static_cast<i64>(orbit.size());
  AbelianPresentation pres{count, 0, [&](i64 a, i64 b) {
                             return static_cast<i64>(pos[alpha[a].images[orbit[b]]]);
                           }};
  Decomposition dec = decompose_abelian(pres);
  OrbitModule om;
  om.orbit = orbit;
  om.e = e;
  om.group = dec.group;
  om.to_group = dec.to_index;
  om.from_group.resize(count);
  for (i64 g = 0; g < count; ++g) om.from_group[g] = orbit[dec.from_index[g]];
  // t.a = e*a, transported to the abstract group.
  std::vector<std::vector<i64>> mat(om.group.rank(), std::vector<i64>(om.group.rank(), 0));
  for (std::size_t c = 0; c < om.group.rank(); ++c) {
    Coords unit(om.group.rank(), 0);
    unit[c] = 1;
    int x = om.from_group[om.group.index(unit)];
    int y = q.mult(e, x);
    if (pos[y] == -1) throw ConsistencyFailure("t-action left the orbit");
    Coords img = om.group.coords(om.to_group[pos[y]]);
    for (std::size_t r = 0; r < om.group.rank(); ++r) mat[r][c] = img[r];
  }
  om.t = make_hom(om.group, om.group, std::move(mat));
  // The matrix form must reproduce e*a on every orbit element.
  for (i64 p = 0; p < count; ++p) {
    int y = q.mult(e, orbit[p]);
    if (om.to_group[pos[y]] != hom_apply_index(om.t, om.to_group[p]))
      throw ConsistencyFailure("orbit module t-action is not linear");
  }
  return om;
}

LaurentModule module_of(const OrbitModule& om) { return make_module(om.group, om.t); }

LabeledSum canonical_mesh(const Quandle& q) {
  if (auto w = medial_check(q))
    throw DomainError("canonical mesh requires a medial quandle");
  auto orb = orbit_of(q);
  int k = *std::max_element(orb.begin(), orb.end()) + 1;
  std::vector<int> reps(k, -1);
  for (int x = 0; x < q.n; ++x)
    if (reps[orb[x]] == -1) reps[orb[x]] = x;  // least index per orbit
  std::vector<OrbitModule> oms;
  std::vector<i64> gidx(q.n, -1);  // quandle index -> group element index in its orbit
  for (int i = 0; i < k; ++i) {
    oms.push_back(orbit_module(q, reps[i]));
    const auto& om = oms.back();
    for (std::size_t p = 0; p < om.orbit.size(); ++p) gidx[om.orbit[p]] = om.to_group[p];
  }
  AffineMesh m;
  for (int i = 0; i < k; ++i) m.groups.push_back(oms[i].group);
  m.phis.resize(k);
  m.consts.resize(k);
  for (int i = 0; i < k; ++i) {
    m.phis[i].resize(k, GroupHom{});
    m.consts[i].resize(k, 0);
    for (int j = 0; j < k; ++j) {
      const FinAbGroup& gj = oms[j].group;
      i64 ef = gidx[q.mult(reps[i], reps[j])];
      m.consts[i][j] = ef;
      // phi_{i,j}(x) = x*e_j - e_i*e_j in the orbit module of e_j.
      std::vector<std::vector<i64>> mat(gj.rank(), std::vector<i64>(oms[i].group.rank(), 0));
      for (std::size_t c = 0; c < oms[i].group.rank(); ++c) {
        Coords unit(oms[i].group.rank(), 0);
        unit[c] = 1;
        int x = oms[i].from_group[oms[i].group.index(unit)];
        i64 v = gj.sub(gidx[q.mult(x, reps[j])], ef);
        Coords img = gj.coords(v);
        for (std::size_t r = 0; r < gj.rank(); ++r) mat[r][c] = img[r];
      }
      m.phis[i][j] = make_hom(oms[i].group, gj, std::move(mat));
      // Linearity check of the extracted hom against the defining formula.
      for (int x : oms[i].orbit) {
        i64 want = gj.sub(gidx[q.mult(x, reps[j])], ef);
        if (hom_apply_index(m.phis[i][j], gidx[x]) != want)
          throw ConsistencyFailure("canonical mesh hom is not linear");
      }
    }
  }
  m = validate_mesh(std::move(m));
  LabeledSum ls;
  ls.mesh = m;
  ls.quandle = q;
  ls.element_of.resize(q.n);
  ls.index_of.resize(k);
  for (int i = 0; i < k; ++i) ls.index_of[i].resize(oms[i].group.size());
  for (int x = 0; x < q.n; ++x) {
    ls.element_of[x] = {orb[x], gidx[x]};
    ls.index_of[orb[x]][gidx[x]] = x;
  }
  // The mesh sum formula must reproduce the original table.
  for (int x = 0; x < q.n; ++x) {
    auto [i, a] = ls.element_of[x];
    for (int y = 0; y < q.n; ++y) {
      auto [j, b] = ls.element_of[y];
      const FinAbGroup& gj = m.groups[j];
      i64 prod = gj.add(m.consts[i][j],
                        gj.add(hom_apply_index(m.phis[i][j], a),
                               gj.sub(b, hom_apply_index(m.phis[j][j], b))));
      if (ls.index_of[j][prod] != q.mult(x, y))
        throw ConsistencyFailure("canonical mesh sum disagrees with the quandle table");
    }
  }
  return ls;
}

// ---------------------------------------------------------------------------
// Random meshes for property tests.

namespace {

bool m3_holds_partial(const AffineMesh& m, const std::vector<std::vector<char>>& set) {
  std::size_t k = m.summands();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t j2 = j + 1; j2 < k; ++j2) {
          if (!set[i][j] || !set[j][c] || !set[i][j2] || !set[j2][c]) continue;
          if (compose(m.phis[j][c], m.phis[i][j]) != compose(m.phis[j2][c], m.phis[i][j2]))
            return false;
        }
  return true;
}

bool m4_holds_partial(const AffineMesh& m, const std::vector<std::vector<char>>& cset) {
  std::size_t k = m.summands();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < k; ++c) {
        if (!cset[i][j] || !cset[i][c] || !cset[j][c]) continue;
        i64 lhs = hom_apply_index(m.phis[j][c], m.consts[i][j]);
        i64 rhs =
            hom_apply_index(m.phis[c][c], m.groups[c].sub(m.consts[i][c], m.consts[j][c]));
        if (lhs != rhs) return false;
      }
  return true;
}

struct Backtracker {
  std::mt19937& rng;
  int nodes = 0;
  int node_cap = 20000;
};

bool assign_phis(AffineMesh& m, std::vector<std::vector<char>>& set,
                 const std::vector<std::pair<int, int>>& slots, std::size_t pos,
                 const std::vector<std::vector<std::vector<GroupHom>>>& cands, Backtracker& bt) {
  if (pos == slots.size()) return true;
  if (++bt.nodes > bt.node_cap) return false;
  auto [i, j] = slots[pos];
  std::vector<int> order(cands[i][j].size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), bt.rng);
  for (int c : order) {
    m.phis[i][j] = cands[i][j][c];
    set[i][j] = 1;
    if (m3_holds_partial(m, set) && assign_phis(m, set, slots, pos + 1, cands, bt)) return true;
    set[i][j] = 0;
  }
  return false;
}

bool assign_consts(AffineMesh& m, std::vector<std::vector<char>>& cset,
                   const std::vector<std::pair<int, int>>& slots, std::size_t pos,
                   Backtracker& bt) {
  if (pos == slots.size()) return true;
  if (++bt.nodes > bt.node_cap) return false;
  auto [i, j] = slots[pos];
  std::vector<i64> order(m.groups[j].size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), bt.rng);
  for (i64 v : order) {
    m.consts[i][j] = v;
    cset[i][j] = 1;
    if (m4_holds_partial(m, cset) && assign_consts(m, cset, slots, pos + 1, bt)) return true;
    cset[i][j] = 0;
  }
  return false;
}

}  // namespace

AffineMesh random_mesh(std::mt19937& rng, int max_summands, i64 max_group) {
  int k = std::uniform_int_distribution<int>(1, max_summands)(rng);
  AffineMesh m;
  for (int i = 0; i < k; ++i) {
    i64 ord = std::uniform_int_distribution<i64>(1, max_group)(rng);
    auto choices = abelian_groups_of_order(ord);
    m.groups.push_back(choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)]);
  }
  // Candidate homs per slot, capped; zero hom always present so the all-zero
  // completion keeps the search total.
  std::vector<std::vector<std::vector<GroupHom>>> cands(k,
                                                        std::vector<std::vector<GroupHom>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto all = enumerate_homs(m.groups[i], m.groups[j]);
      if (i == j) {
        std::erase_if(all, [&](const GroupHom& h) {
          return !is_automorphism(hom_sub(identity_hom(m.groups[i]), h));  // (M1)
        });
      }
      if (all.size() > 64) {
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(64);
      }
      GroupHom zero = zero_hom(m.groups[i], m.groups[j]);
      if (std::find(all.begin(), all.end(), zero) == all.end()) all.push_back(zero);
      cands[i][j] = std::move(all);
    }
  m.phis.assign(k, std::vector<GroupHom>(k));
  m.consts.assign(k, std::vector<i64>(k, 0));
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<char>> set(k, std::vector<char>(k, 0));
  Backtracker bt{rng};
  if (!assign_phis(m, set, slots, 0, cands, bt)) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m.phis[i][j] = cands[i][j].back();  // all zero
  }
  std::vector<std::pair<int, int>> cslots;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) cslots.emplace_back(i, j);
  std::vector<std::vector<char>> cset(k, std::vector<char>(k, 0));
  for (int i = 0; i < k; ++i) cset[i][i] = 1;  // c_{i,i} = 0 fixed
  Backtracker bt2{rng};
  if (!assign_consts(m, cset, cslots, 0, bt2))
    for (auto& row : m.consts) std::fill(row.begin(), row.end(), 0);
  return validate_mesh(std::move(m));
}

}  // namespace qf
