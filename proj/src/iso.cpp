#include "qforge/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qf {

InvariantFingerprint fingerprint(const Quandle& q) {
  InvariantFingerprint fp;
  fp.size = q.n;
  for (const auto& o : orbits(q)) fp.orbit_sizes.push_back(static_cast<int>(o.size()));
  std::sort(fp.orbit_sizes.begin(), fp.orbit_sizes.end());
  fp.reductivity = reductivity_degree(q);
  fp.involutory = is_involutory(q);
  for (int a = 0; a < q.n; ++a) fp.row_cycle_types.push_back(cycle_type(left_translation(q, a)));
  std::sort(fp.row_cycle_types.begin(), fp.row_cycle_types.end());
  return fp;
}

InvariantFingerprint fingerprint_with_lattice(const Quandle& q, i64 cap) {
  InvariantFingerprint fp = fingerprint(q);
  fp.congruence_count = static_cast<i64>(all_congruences(q, cap).size());
  return fp;
}

// ---------------------------------------------------------------------------
// Quandle isomorphism by backtracking with forced-image propagation.

namespace {

struct IsoSearch {
  const Quandle& a;
  const Quandle& b;
  std::vector<int> key_a, key_b;  // element invariant classes (shared id space)
  std::vector<int> f, g;          // partial map a->b and inverse
  std::vector<int> order;         // assignment order over a's elements

  bool assign(int x, int y, std::vector<int>& trail) {
    // Assign f(x)=y and close under f(u*v) = f(u)*f(v).
    std::vector<std::pair<int, int>> queue{{x, y}};
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      if (f[u] != -1) {
        if (f[u] != v) return false;
        continue;
      }
      if (g[v] != -1 || key_a[u] != key_b[v]) return false;
      f[u] = v;
      g[v] = u;
      trail.push_back(u);
      for (int w = 0; w < a.n; ++w) {
        if (f[w] == -1) continue;
        queue.emplace_back(a.mult(u, w), b.mult(v, f[w]));
        queue.emplace_back(a.mult(w, u), b.mult(f[w], v));
      }
    }
    return true;
  }

  void undo(const std::vector<int>& trail) {
    for (int u : trail) {
      g[f[u]] = -1;
      f[u] = -1;
    }
  }

  bool extend(std::size_t pos) {
    while (pos < order.size() && f[order[pos]] != -1) ++pos;
    if (pos == order.size()) return true;
    int x = order[pos];
    for (int y = 0; y < b.n; ++y) {
      if (g[y] != -1 || key_b[y] != key_a[x]) continue;
      std::vector<int> trail;
      if (assign(x, y, trail) && extend(pos + 1)) return true;
      undo(trail);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> quandle_isomorphic(const Quandle& a, const Quandle& b) {
  if (a.n != b.n) return std::nullopt;
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  // Element invariant: (orbit size, cycle type of L_x), shared id space.
  auto orb_a = orbit_of(a), orb_b = orbit_of(b);
  std::vector<int> osz_a(a.n, 0), osz_b(b.n, 0);  // members per orbit id
  for (int x = 0; x < a.n; ++x) ++osz_a[orb_a[x]];
  for (int x = 0; x < b.n; ++x) ++osz_b[orb_b[x]];
  std::map<std::vector<std::vector<int>>, int> key_ids;
  auto key_of = [&](const Quandle& q, int x, int orbsize) {
    // (orbit size, cycle type of L_x, sorted cycle types of all L_x L_z^-1);
    // the difference profile is conjugation-invariant and separates elements
    // whose own rows look alike.
    std::vector<std::vector<int>> k{{orbsize}, cycle_type(left_translation(q, x))};
    Permutation lx = left_translation(q, x);
    for (int z = 0; z < q.n; ++z)
      k.push_back(cycle_type(compose(lx, inverse(left_translation(q, z)))));
    std::sort(k.begin() + 2, k.end());
    auto [it, fresh] = key_ids.emplace(std::move(k), static_cast<int>(key_ids.size()));
    return it->second;
  };
  IsoSearch s{a, b, {}, {}, std::vector<int>(a.n, -1), std::vector<int>(b.n, -1), {}};
  s.key_a.resize(a.n);
  s.key_b.resize(b.n);
  for (int x = 0; x < a.n; ++x) s.key_a[x] = key_of(a, x, osz_a[orb_a[x]]);
  for (int x = 0; x < b.n; ++x) s.key_b[x] = key_of(b, x, osz_b[orb_b[x]]);
  {
    std::vector<i64> ka(s.key_a.begin(), s.key_a.end()), kb(s.key_b.begin(), s.key_b.end());
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return std::nullopt;
  }
  // Assignment order: one representative per orbit first (largest orbit
  // leading), then the rest.  Cross-orbit products then force most images by
  // propagation; assigning a whole orbit up front would leave projection-like
  // orbits entirely unconstrained.
  s.order.resize(a.n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::vector<char> seen_orbit(a.n, 0);
  std::vector<int> rep_rank(a.n, 1);  // 0 = orbit representative
  for (int x = 0; x < a.n; ++x)
    if (!seen_orbit[orb_a[x]]) {
      seen_orbit[orb_a[x]] = 1;
      rep_rank[x] = 0;
    }
  std::stable_sort(s.order.begin(), s.order.end(), [&](int x, int y) {
    if (rep_rank[x] != rep_rank[y]) return rep_rank[x] < rep_rank[y];
    return osz_a[orb_a[x]] > osz_a[orb_a[y]];
  });
  if (!s.extend(0)) return std::nullopt;
  // Replay the witness.
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (s.f[a.mult(x, y)] != b.mult(s.f[x], s.f[y]))
        throw ConsistencyFailure("isomorphism witness fails replay");
  return s.f;
}

// ---------------------------------------------------------------------------
// Mesh homology.

namespace {

struct HomologySearch {
  const AffineMesh& a;
  const AffineMesh& b;
  std::size_t k;
  std::vector<std::vector<std::vector<GroupHom>>> isos;  // isos[i][j]: A_i -> B_j
  std::vector<int> sigma;
  std::vector<char> used;
  std::vector<const GroupHom*> psi;
  std::vector<i64> d;
  std::vector<char> dset;

  bool h1_ok(std::size_t i, std::size_t j) {
    return compose(*psi[j], a.phis[i][j]) ==
           compose(b.phis[sigma[i]][sigma[j]], *psi[i]);
  }

  bool h2_ok(std::size_t i, std::size_t j) {
    const FinAbGroup& tg = b.groups[sigma[j]];
    i64 lhs = hom_apply_index(*psi[j], a.consts[i][j]);
    i64 rhs = tg.add(b.consts[sigma[i]][sigma[j]],
                     tg.sub(hom_apply_index(b.phis[sigma[i]][sigma[j]], d[i]),
                            hom_apply_index(b.phis[sigma[j]][sigma[j]], d[j])));
    return lhs == rhs;
  }

  bool search_d(std::size_t i) {
    if (i == k) return true;
    for (i64 v = 0; v < b.groups[sigma[i]].size(); ++v) {
      d[i] = v;
      dset[i] = 1;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        if (dset[j]) ok = h2_ok(i, j) && h2_ok(j, i);
      if (ok && search_d(i + 1)) return true;
      dset[i] = 0;
    }
    return false;
  }

  bool search_psi(std::size_t i) {
    if (i == k) {
      std::fill(dset.begin(), dset.end(), 0);
      return search_d(0);
    }
    for (const GroupHom& cand : isos[i][sigma[i]]) {
      psi[i] = &cand;
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j)
        if (psi[j]) ok = h1_ok(i, j) && h1_ok(j, i);
      if (ok && search_psi(i + 1)) return true;
    }
    psi[i] = nullptr;
    return false;
  }

  bool search_sigma(std::size_t i) {
    if (i == k) {
      std::fill(psi.begin(), psi.end(), nullptr);
      return search_psi(0);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || isos[i][j].empty()) continue;
      sigma[i] = static_cast<int>(j);
      used[j] = 1;
      if (search_sigma(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<HomologyWitness> are_homologous(const AffineMesh& a, const AffineMesh& b,
                                              i64 aut_cap) {
  if (a.summands() != b.summands()) return std::nullopt;
  std::size_t k = a.summands();
  HomologySearch s{a, b, k};
  s.isos.assign(k, std::vector<std::vector<GroupHom>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a.groups[i].size() == b.groups[j].size())
        s.isos[i][j] = enumerate_isos(a.groups[i], b.groups[j], aut_cap);
  s.sigma.assign(k, -1);
  s.used.assign(k, 0);
  s.psi.assign(k, nullptr);
  s.d.assign(k, 0);
  s.dset.assign(k, 0);
  if (!s.search_sigma(0)) return std::nullopt;
  HomologyWitness w;
  w.sigma = s.sigma;
  for (std::size_t i = 0; i < k; ++i) w.psi.push_back(*s.psi[i]);
  w.d = s.d;
  // Replay both conditions.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!s.h1_ok(i, j) || !s.h2_ok(i, j))
        throw ConsistencyFailure("homology witness fails replay");
  return w;
}

bool iso_equiv_check(const Quandle& a, const Quandle& b) {
  bool table = quandle_isomorphic(a, b).has_value();
  bool mesh = are_homologous(canonical_mesh(a).mesh, canonical_mesh(b).mesh).has_value();
  if (table != mesh)
    throw ConsistencyFailure("table isomorphism and mesh homology disagree");
  return table;
}

// ---------------------------------------------------------------------------
// Cyclic-orbit criterion.

namespace {

bool prime_power(i64 n, i64& p, i64& s) {
  if (n < 2) return false;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      p = q;
      s = 0;
      while (n > 1) {
        if (n % q != 0) return false;
        n /= q;
        ++s;
      }
      return true;
    }
  p = n;
  s = 1;
  return true;
}

}  // namespace

CyclicShape extract_cyclic_shape(const AffineMesh& m) {
  std::size_t k = m.summands();
  if (k < 2) throw ShapeMismatch("criterion needs at least two summands");
  std::size_t main = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (m.groups[i].size() > m.groups[main].size()) main = i;
  const FinAbGroup& A = m.groups[main];
  if (A.rank() != 1) throw ShapeMismatch("main summand is not cyclic");
  CyclicShape sh;
  if (!prime_power(A.orders[0], sh.p, sh.s))
    throw ShapeMismatch("main summand order is not a prime power");
  // phi = p^k * a with 0 < k < s.
  i64 f = hom_apply_index(m.phis[main][main], 1);
  sh.k = 0;
  i64 v = f;
  if (v == 0) throw ShapeMismatch("phi is zero (2-reductive case out of scope)");
  while (v % sh.p == 0) {
    v /= sh.p;
    ++sh.k;
  }
  sh.a = v;
  if (sh.k <= 0 || sh.k >= sh.s) throw ShapeMismatch("phi is not p^k*a with 0 < k < s");
  Subgroup phi_a = image(m.phis[main][main]);
  for (std::size_t i = 0; i < k; ++i) {
    if (i == main) continue;
    if (m.groups[i].rank() > 1 || m.groups[i].size() != phi_a.size())
      throw ShapeMismatch("secondary summand does not match phi(A)");
    if (kernel(m.phis[i][main]).size() != 1 || image(m.phis[i][main]).elements != phi_a.elements)
      throw ShapeMismatch("secondary summand does not embed onto phi(A)");
    sh.c.push_back(m.consts[i][main]);
  }
  // Constants hypothesis: all outside phi(A), or exactly one inside.
  int inside = 0;
  for (i64 c : sh.c)
    if (phi_a.contains(c)) ++inside;
  if (inside > 1) throw ShapeMismatch("more than one constant lies in phi(A)");
  return sh;
}

bool cyclic_iso_criterion(const AffineMesh& a, const AffineMesh& b) {
  CyclicShape x = extract_cyclic_shape(a), y = extract_cyclic_shape(b);
  if (x.c.size() != y.c.size()) return false;
  // Different carriers or different phi give non-isomorphic sums (endomorphisms
  // of a cyclic group conjugate only when equal).
  bool same_phi = x.p == y.p && x.s == y.s && x.k == y.k && x.a == y.a;
  i64 n = static_cast<i64>(x.c.size());
  i64 ps = 1;
  for (i64 i = 0; i < x.s; ++i) ps *= x.p;
  i64 pk = 1;
  for (i64 i = 0; i < x.k; ++i) pk *= x.p;
  i64 m = (x.s + x.k - 1) / x.k;  // ceil(s/k)
  if (same_phi) {
    // Joint constants hypothesis: both constant lists have all entries outside
    // phi(A), or each has exactly one inside.  Mixed pairs are off-hypothesis.
    auto inside = [&](const CyclicShape& sh) {
      int cnt = 0;
      for (i64 c : sh.c)
        if (c % pk == 0) ++cnt;
      return cnt;
    };
    if (inside(x) != inside(y))
      throw ShapeMismatch("constants hypothesis differs between the meshes");
  }
  bool bilinear = false;
  if (same_phi && n > m) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (i64 i = 0; i < n && ok; ++i)
          for (i64 j = 0; j < n && ok; ++j)
            if ((x.c[i] * y.c[perm[j]] - x.c[j] * y.c[perm[i]]) % ps != 0) ok = false;
        if (ok) {
          bilinear = true;
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // Exact engine: solvability of psi(c_i) = c'_{sigma(i)} + p^k * x_i,
  // i.e. a unit u and a pairing sigma with p^k | (c'_{sigma(i)} - u*c_i).
  // This is the verdict.  The popular shortcut "n <= ceil(s/k) always gives
  // isomorphic sums" over-claims: e.g. over Z_8 with phi = 4 the constant
  // lists {1,2} and {1,3} admit no unit u with 4 | (c'_i - u*c_i), and a
  // table-level search confirms the 12-element sums are non-isomorphic.  So
  // for n <= m the engine alone decides; for n > m the bilinear congruence
  // scan above must agree with it.
  bool engine = false;
  if (same_phi) {
    if (ps > 100000) throw CapExceeded("cyclic criterion unit scan too large");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (i64 u = 1; u < ps && !engine; ++u) {
        if (u % x.p == 0) continue;
        bool ok = true;
        for (i64 i = 0; i < n && ok; ++i) {
          i64 diff = ((y.c[perm[i]] - u * x.c[i]) % ps + ps) % ps;
          if (diff % pk != 0) ok = false;
        }
        engine = ok;
      }
      if (engine) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (same_phi && n > m && bilinear != engine)
    throw ConsistencyFailure("bilinear congruence scan disagrees with linear-system engine");
  return engine;
}

}  // namespace qf
