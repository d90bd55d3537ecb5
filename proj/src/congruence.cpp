#include "qforge/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qf {

int Congruence::block_count() const {
  return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
}

bool Congruence::is_diagonal() const { return block_count() == size(); }
bool Congruence::is_full() const { return block_count() <= 1; }

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(block_count());
  for (int x = 0; x < size(); ++x) out[cls[x]].push_back(x);
  return out;
}

std::vector<i64> Congruence::block_size_profile() const {
  std::vector<i64> sizes;
  for (const auto& b : blocks()) sizes.push_back(static_cast<i64>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

Congruence congruence_from_classes(std::vector<int> cls) {
  std::map<int, int> relabel;
  for (int& c : cls) {
    auto [it, fresh] = relabel.emplace(c, static_cast<int>(relabel.size()));
    c = it->second;
  }
  return Congruence{std::move(cls)};
}

Congruence diagonal_congruence(int n) {
  std::vector<int> cls(n);
  std::iota(cls.begin(), cls.end(), 0);
  return Congruence{std::move(cls)};
}

Congruence full_congruence(int n) { return Congruence{std::vector<int>(n, 0)}; }

Congruence meet(const Congruence& a, const Congruence& b) {
  std::vector<int> cls(a.size());
  std::map<std::pair<int, int>, int> ids;
  for (int x = 0; x < a.size(); ++x) {
    auto [it, fresh] =
        ids.emplace(std::make_pair(a.cls[x], b.cls[x]), static_cast<int>(ids.size()));
    cls[x] = it->second;
  }
  return Congruence{std::move(cls)};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    return true;
  }
};

Congruence from_uf(UnionFind& uf) {
  std::vector<int> cls(uf.parent.size());
  for (std::size_t x = 0; x < uf.parent.size(); ++x) cls[x] = uf.find(static_cast<int>(x));
  return congruence_from_classes(std::move(cls));
}

}  // namespace

Congruence join(const Congruence& a, const Congruence& b) {
  UnionFind uf(a.size());
  std::vector<int> rep_a(a.block_count(), -1), rep_b(b.block_count(), -1);
  for (int x = 0; x < a.size(); ++x) {
    if (rep_a[a.cls[x]] == -1) rep_a[a.cls[x]] = x; else uf.unite(rep_a[a.cls[x]], x);
    if (rep_b[b.cls[x]] == -1) rep_b[b.cls[x]] = x; else uf.unite(rep_b[b.cls[x]], x);
  }
  return from_uf(uf);
}

bool leq(const Congruence& a, const Congruence& b) {
  std::vector<int> bcls_of_a(a.block_count(), -1);
  for (int x = 0; x < a.size(); ++x) {
    int& bc = bcls_of_a[a.cls[x]];
    if (bc == -1) bc = b.cls[x];
    else if (bc != b.cls[x]) return false;
  }
  return true;
}

bool is_congruence(const Quandle& q, const Congruence& c) {
  for (const auto& block : c.blocks()) {
    for (std::size_t u = 0; u < block.size(); ++u)
      for (std::size_t v = u + 1; v < block.size(); ++v) {
        int x = block[u], y = block[v];
        for (int z = 0; z < q.n; ++z) {
          if (!c.related(q.mult(z, x), q.mult(z, y))) return false;
          if (!c.related(q.mult(x, z), q.mult(y, z))) return false;
          if (!c.related(q.ldiv(z, x), q.ldiv(z, y))) return false;
          if (!c.related(q.ldiv(x, z), q.ldiv(y, z))) return false;
        }
      }
  }
  return true;
}

Congruence congruence_generated(const Quandle& q, const std::vector<std::pair<int, int>>& pairs) {
  for (auto [a, b] : pairs)
    if (a < 0 || b < 0 || a >= q.n || b >= q.n) throw DomainError("pair index out of range");
  UnionFind uf(q.n);
  std::vector<std::pair<int, int>> work;
  auto merge = [&](int x, int y) {
    if (uf.unite(x, y)) work.emplace_back(x, y);
  };
  for (auto [a, b] : pairs) merge(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (int z = 0; z < q.n; ++z) {
      merge(q.mult(z, x), q.mult(z, y));
      merge(q.mult(x, z), q.mult(y, z));
      merge(q.ldiv(z, x), q.ldiv(z, y));
      merge(q.ldiv(x, z), q.ldiv(y, z));
    }
  }
  return from_uf(uf);
}

Congruence principal_congruence(const Quandle& q, int a, int b) {
  return congruence_generated(q, {{a, b}});
}

std::vector<Congruence> all_congruences(const Quandle& q, i64 cap) {
  std::set<Congruence> found;
  found.insert(diagonal_congruence(q.n));
  for (int a = 0; a < q.n; ++a)
    for (int b = a + 1; b < q.n; ++b) found.insert(principal_congruence(q, a, b));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Congruence> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Congruence jn = join(cur[i], cur[j]);
        if (found.insert(jn).second) {
          grew = true;
          if (static_cast<i64>(found.size()) > cap)
            throw CapExceeded("congruence lattice exceeds cap");
        }
      }
  }
  return {found.begin(), found.end()};
}

Congruence principal_meet_serial(const Quandle& q) {
  Congruence acc = full_congruence(q.n);
  for (int a = 0; a < q.n && !acc.is_diagonal(); ++a)
    for (int b = a + 1; b < q.n; ++b) {
      acc = meet(acc, principal_congruence(q, a, b));
      if (acc.is_diagonal()) break;
    }
  return acc;
}

Congruence principal_meet(const Quandle& q) {
  int n = q.n;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  Congruence acc = full_congruence(n);
  bool diagonal = false;
#ifdef QF_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    bool stop;
#ifdef QF_HAVE_OPENMP
#pragma omp atomic read
    stop = diagonal;
#else
    stop = diagonal;
#endif
    if (stop) continue;
    Congruence c = principal_congruence(q, pairs[idx].first, pairs[idx].second);
#ifdef QF_HAVE_OPENMP
#pragma omp critical
#endif
    {
      if (!diagonal) {
        acc = meet(acc, c);
        if (acc.is_diagonal()) diagonal = true;
      }
    }
  }
  return acc;
}

std::optional<Congruence> monolith(const Quandle& q) {
  Congruence m = principal_meet(q);
  if (m.is_diagonal()) return std::nullopt;
  return m;
}

bool is_subdirectly_irreducible(const Quandle& q) { return monolith(q).has_value(); }

bool is_simple(const Quandle& q) {
  if (q.n < 2) return false;
  for (int a = 0; a < q.n; ++a)
    for (int b = a + 1; b < q.n; ++b)
      if (!principal_congruence(q, a, b).is_full()) return false;
  return true;
}

Congruence orbit_congruence_pi(const Quandle& q) {
  Congruence c = congruence_from_classes(orbit_of(q));
  if (!is_congruence(q, c)) throw ConsistencyFailure("orbit partition is not a congruence");
  return c;
}

Congruence lambda_congruence(const Quandle& q) {
  std::map<std::vector<int>, int> ids;
  std::vector<int> cls(q.n);
  for (int a = 0; a < q.n; ++a) {
    std::vector<int> row(q.mult_.begin() + a * q.n, q.mult_.begin() + (a + 1) * q.n);
    auto [it, fresh] = ids.emplace(std::move(row), static_cast<int>(ids.size()));
    cls[a] = it->second;
  }
  Congruence c = congruence_from_classes(std::move(cls));
  if (!is_congruence(q, c))
    throw DomainError("equal-row partition is not a congruence (non-medial input?)");
  return c;
}

Congruence theta_congruence(const Quandle& q) {
  return meet(orbit_congruence_pi(q), lambda_congruence(q));
}

// ---------------------------------------------------------------------------
// Congruences below pi vs families of submodules.

bool family_condition_holds(const AffineMesh& m, const SubmoduleFamily& f) {
  std::size_t k = m.summands();
  if (f.parts.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i)
    if (f.parts[i].parent != m.groups[i]) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (i64 e : f.parts[i].elements)
        if (!f.parts[j].contains(hom_apply_index(m.phis[i][j], e))) return false;
  return true;
}

Congruence congruence_from_family(const LabeledSum& ls, const SubmoduleFamily& f) {
  if (!family_condition_holds(ls.mesh, f))
    throw DomainError("submodule family violates phi_{k,j}(M_k) <= M_j");
  int n = ls.quandle.n;
  std::vector<int> cls(n);
  std::map<std::pair<int, i64>, int> ids;  // (summand, coset id) -> class
  std::size_t k = ls.mesh.summands();
  for (std::size_t i = 0; i < k; ++i) {
    const FinAbGroup& g = ls.mesh.groups[i];
    // Coset id = least element of a + M_i.
    for (i64 a = 0; a < g.size(); ++a) {
      i64 least = a;
      for (i64 m : f.parts[i].elements) least = std::min(least, g.add(a, m));
      auto [it, fresh] = ids.emplace(std::make_pair(static_cast<int>(i), least),
                                     static_cast<int>(ids.size()));
      cls[ls.index_of[i][a]] = it->second;
    }
  }
  Congruence c = congruence_from_classes(std::move(cls));
  if (!is_congruence(ls.quandle, c))
    throw ConsistencyFailure("family-induced partition is not a congruence");
  return c;
}

SubmoduleFamily family_from_congruence(const LabeledSum& ls, const Congruence& rho) {
  Congruence pi = orbit_congruence_pi(ls.quandle);
  if (!leq(rho, pi)) throw DomainError("congruence is not below the orbit congruence");
  SubmoduleFamily f;
  std::size_t k = ls.mesh.summands();
  for (std::size_t i = 0; i < k; ++i) {
    const FinAbGroup& g = ls.mesh.groups[i];
    int zero_idx = ls.index_of[i][0];
    Subgroup s;
    s.parent = g;
    for (i64 a = 0; a < g.size(); ++a)
      if (rho.related(ls.index_of[i][a], zero_idx)) s.elements.push_back(a);
    std::sort(s.elements.begin(), s.elements.end());
    s.gens = s.elements;
    // Must be an actual subgroup for the correspondence to hold.
    for (i64 x : s.elements)
      for (i64 y : s.elements)
        if (!s.contains(g.add(x, y)))
          throw ConsistencyFailure("congruence block of zero is not a subgroup");
    f.parts.push_back(std::move(s));
  }
  if (!family_condition_holds(ls.mesh, f))
    throw ConsistencyFailure("derived family violates the submodule condition");
  return f;
}

KernelFamilies kernel_families(const LabeledSum& ls, int i0, int j0) {
  const AffineMesh& m = ls.mesh;
  std::size_t k = m.summands();
  KernelFamilies out;
  for (std::size_t i = 0; i < k; ++i) out.kernels.parts.push_back(kernel(m.phis[i][j0]));
  // Stable image of phi_{i,i}: intersection of its forward images.
  std::vector<Subgroup> stable;
  for (std::size_t i = 0; i < k; ++i) {
    Subgroup s = full_subgroup(m.groups[i]);
    while (true) {
      std::set<i64> img;
      for (i64 e : s.elements) img.insert(hom_apply_index(m.phis[i][i], e));
      Subgroup next;
      next.parent = m.groups[i];
      next.elements.assign(img.begin(), img.end());
      next.gens = next.elements;
      if (next.elements == s.elements) break;
      s = std::move(next);
    }
    stable.push_back(s);
  }
  out.stable_images.parts = stable;
  for (std::size_t j = 0; j < k; ++j) {
    std::set<i64> img;
    for (i64 e : stable[i0].elements) img.insert(hom_apply_index(m.phis[i0][j], e));
    Subgroup s;
    s.parent = m.groups[j];
    s.elements.assign(img.begin(), img.end());
    s.gens = s.elements;
    out.pushforwards.parts.push_back(std::move(s));
  }
  return out;
}

}  // namespace qf
