#include "qforge/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qf {

FinAbGroup::FinAbGroup(std::vector<i64> ns) : orders(std::move(ns)) {
  for (i64 n : orders)
    if (n < 1) throw DomainError("cyclic factor order must be >= 1");
}

i64 FinAbGroup::size() const {
  i64 s = 1;
  for (i64 n : orders) s *= n;
  return s;
}

// First coordinate is most significant, so index order equals lexicographic
// order on coordinate vectors (transversal tie-breaking relies on this).
Coords FinAbGroup::coords(i64 index) const {
  Coords c(orders.size());
  for (std::size_t i = orders.size(); i-- > 0;) {
    c[i] = index % orders[i];
    index /= orders[i];
  }
  return c;
}

i64 FinAbGroup::index(const Coords& c) const {
  if (c.size() != orders.size()) throw DomainError("coordinate arity mismatch");
  i64 idx = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    i64 r = c[i] % orders[i];
    if (r < 0) r += orders[i];
    idx = idx * orders[i] + r;
  }
  return idx;
}

Coords FinAbGroup::reduce(Coords c) const {
  if (c.size() != orders.size()) throw DomainError("coordinate arity mismatch");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    c[i] %= orders[i];
    if (c[i] < 0) c[i] += orders[i];
  }
  return c;
}

i64 FinAbGroup::add(i64 a, i64 b) const {
  Coords ca = coords(a), cb = coords(b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return index(ca);
}

i64 FinAbGroup::neg(i64 a) const {
  Coords c = coords(a);
  for (auto& x : c) x = -x;
  return index(c);
}

i64 FinAbGroup::scalar(i64 k, i64 a) const {
  Coords c = coords(a);
  for (auto& x : c) x *= k;
  return index(c);
}

i64 FinAbGroup::elem_order(i64 a) const {
  Coords c = coords(a);
  i64 ord = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    i64 oi = orders[i] / std::gcd(orders[i], c[i] == 0 ? orders[i] : c[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

GroupElem make_elem(const FinAbGroup& g, Coords c) { return GroupElem{g, g.reduce(std::move(c))}; }

// ---------------------------------------------------------------------------
// Homomorphisms

static std::vector<std::vector<i64>> reduce_matrix(const FinAbGroup& target,
                                                   std::vector<std::vector<i64>> m) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (auto& x : m[r]) {
      x %= target.orders[r];
      if (x < 0) x += target.orders[r];
    }
  return m;
}

GroupHom make_hom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<i64>> matrix) {
  if (matrix.size() != target.rank()) throw DomainError("hom matrix row count != target rank");
  for (const auto& row : matrix)
    if (row.size() != source.rank()) throw DomainError("hom matrix col count != source rank");
  matrix = reduce_matrix(target, std::move(matrix));
  for (std::size_t c = 0; c < source.rank(); ++c) {
    i64 nc = source.orders[c];
    for (std::size_t r = 0; r < target.rank(); ++r)
      if ((nc * matrix[r][c]) % target.orders[r] != 0)
        throw DomainError("hom not well-defined on generator " + std::to_string(c));
  }
  return GroupHom{std::move(source), std::move(target), std::move(matrix)};
}

GroupHom identity_hom(const FinAbGroup& g) {
  std::vector<std::vector<i64>> m(g.rank(), std::vector<i64>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = 1;
  return make_hom(g, g, std::move(m));
}

GroupHom zero_hom(const FinAbGroup& source, const FinAbGroup& target) {
  std::vector<std::vector<i64>> m(target.rank(), std::vector<i64>(source.rank(), 0));
  return make_hom(source, target, std::move(m));
}

GroupHom scalar_hom(const FinAbGroup& g, i64 k) {
  std::vector<std::vector<i64>> m(g.rank(), std::vector<i64>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = k;
  return make_hom(g, g, std::move(m));
}

Coords hom_apply(const GroupHom& h, const Coords& a) {
  if (a.size() != h.source.rank()) throw DomainError("element arity does not match hom source");
  Coords out(h.target.rank(), 0);
  for (std::size_t r = 0; r < h.target.rank(); ++r) {
    i64 acc = 0;
    for (std::size_t c = 0; c < h.source.rank(); ++c) acc += h.matrix[r][c] * a[c];
    out[r] = acc;
  }
  return h.target.reduce(std::move(out));
}

GroupElem hom_apply(const GroupHom& h, const GroupElem& a) {
  if (a.group != h.source) throw DomainError("element does not belong to hom source");
  return GroupElem{h.target, hom_apply(h, a.coords)};
}

i64 hom_apply_index(const GroupHom& h, i64 a) {
  return h.target.index(hom_apply(h, h.source.coords(a)));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target != g.source) throw DomainError("hom composition carrier mismatch");
  std::vector<std::vector<i64>> m(g.target.rank(), std::vector<i64>(f.source.rank(), 0));
  for (std::size_t r = 0; r < g.target.rank(); ++r)
    for (std::size_t c = 0; c < f.source.rank(); ++c) {
      i64 acc = 0;
      for (std::size_t k = 0; k < g.source.rank(); ++k) acc += g.matrix[r][k] * f.matrix[k][c];
      m[r][c] = acc;
    }
  return make_hom(f.source, g.target, std::move(m));
}

GroupHom hom_add(const GroupHom& a, const GroupHom& b) {
  if (a.source != b.source || a.target != b.target) throw DomainError("hom sum carrier mismatch");
  auto m = a.matrix;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] += b.matrix[r][c];
  return make_hom(a.source, a.target, std::move(m));
}

GroupHom hom_sub(const GroupHom& a, const GroupHom& b) {
  if (a.source != b.source || a.target != b.target) throw DomainError("hom diff carrier mismatch");
  auto m = a.matrix;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= b.matrix[r][c];
  return make_hom(a.source, a.target, std::move(m));
}

GroupHom hom_pow(const GroupHom& h, i64 n) {
  if (h.source != h.target) throw DomainError("hom power needs an endomorphism");
  if (n < 0) throw DomainError("hom power exponent must be >= 0");
  GroupHom acc = identity_hom(h.source);
  for (i64 i = 0; i < n; ++i) acc = compose(h, acc);
  return acc;
}

static bool is_bijective_hom(const GroupHom& h) {
  if (h.source.size() != h.target.size()) return false;
  i64 n = h.source.size();
  for (i64 a = 1; a < n; ++a)
    if (hom_apply_index(h, a) == 0) return false;
  return true;
}

bool is_automorphism(const GroupHom& h) {
  if (h.source != h.target) throw DomainError("is_automorphism: source != target");
  return is_bijective_hom(h);
}

std::optional<GroupHom> inverse_hom(const GroupHom& h) {
  if (!is_bijective_hom(h)) return std::nullopt;
  // Invert by applying to every element; desk-scale carriers only.
  i64 n = h.source.size();
  std::vector<i64> inv(n, -1);
  for (i64 a = 0; a < n; ++a) inv[hom_apply_index(h, a)] = a;
  std::vector<std::vector<i64>> m(h.source.rank(), std::vector<i64>(h.target.rank(), 0));
  for (std::size_t c = 0; c < h.target.rank(); ++c) {
    Coords gen(h.target.rank(), 0);
    gen[c] = 1;
    Coords pre = h.source.coords(inv[h.target.index(gen)]);
    for (std::size_t r = 0; r < h.source.rank(); ++r) m[r][c] = pre[r];
  }
  return make_hom(h.target, h.source, std::move(m));
}

// ---------------------------------------------------------------------------
// Subgroups

bool Subgroup::contains(i64 e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

Subgroup subgroup_generated(const FinAbGroup& g, const std::vector<i64>& gens) {
  std::set<i64> seen{0};
  std::vector<i64> queue{0};
  while (!queue.empty()) {
    i64 x = queue.back();
    queue.pop_back();
    for (i64 gen : gens) {
      i64 y = g.add(x, gen);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  Subgroup s;
  s.parent = g;
  s.elements.assign(seen.begin(), seen.end());
  s.gens = gens;
  return s;
}

Subgroup trivial_subgroup(const FinAbGroup& g) { return subgroup_generated(g, {}); }

Subgroup full_subgroup(const FinAbGroup& g) {
  std::vector<i64> gens;
  std::size_t k = g.rank();
  for (std::size_t i = 0; i < k; ++i) {
    Coords c(k, 0);
    c[i] = 1;
    gens.push_back(g.index(c));
  }
  return subgroup_generated(g, gens);
}

Subgroup kernel(const GroupHom& h) {
  Subgroup s;
  s.parent = h.source;
  i64 n = h.source.size();
  for (i64 a = 0; a < n; ++a)
    if (hom_apply_index(h, a) == 0) s.elements.push_back(a);
  for (i64 e : s.elements)
    if (e != 0) s.gens.push_back(e);
  return s;
}

Subgroup image(const GroupHom& h) {
  std::set<i64> img;
  i64 n = h.source.size();
  for (i64 a = 0; a < n; ++a) img.insert(hom_apply_index(h, a));
  Subgroup s;
  s.parent = h.target;
  s.elements.assign(img.begin(), img.end());
  for (i64 e : s.elements)
    if (e != 0) s.gens.push_back(e);
  return s;
}

std::vector<Subgroup> all_subgroups(const FinAbGroup& g, i64 element_cap) {
  if (g.size() > element_cap)
    throw CapExceeded("all_subgroups: group of order " + std::to_string(g.size()) +
                      " exceeds cap " + std::to_string(element_cap));
  std::map<std::vector<i64>, Subgroup> found;
  auto insert = [&](const Subgroup& s) {
    return found.emplace(s.elements, s).second;
  };
  insert(trivial_subgroup(g));
  for (i64 a = 1; a < g.size(); ++a) insert(subgroup_generated(g, {a}));
  // Join-closure of the cyclic subgroups.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> current;
    current.reserve(found.size());
    for (auto& [_, s] : found) current.push_back(s);
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<i64> gens = current[i].elements;
        gens.insert(gens.end(), current[j].elements.begin(), current[j].elements.end());
        Subgroup join = subgroup_generated(g, gens);
        if (insert(join)) grew = true;
      }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& [_, s] : found) out.push_back(s);
  return out;
}

std::vector<std::vector<i64>> cosets(const FinAbGroup& g, const Subgroup& s) {
  if (s.parent != g) throw DomainError("cosets: subgroup of a different carrier");
  i64 n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<i64>> out;
  for (i64 a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<i64> coset;
    for (i64 h : s.elements) {
      i64 x = g.add(a, h);
      coset.push_back(x);
      seen[x] = 1;
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

std::vector<i64> transversal(const FinAbGroup& g, const Subgroup& s) {
  std::vector<i64> reps;
  for (const auto& coset : cosets(g, s)) reps.push_back(coset.front());
  return reps;
}

// ---------------------------------------------------------------------------
// Laurent modules

LaurentModule make_module(FinAbGroup group, GroupHom t) {
  if (t.source != group || t.target != group) throw DomainError("module action carrier mismatch");
  if (!is_bijective_hom(t)) throw DomainError("module action t must be bijective");
  GroupHom phi = hom_sub(identity_hom(group), t);
  if (compose(phi, t) != compose(t, phi))
    throw DomainError("module action: phi and t fail to commute");
  return LaurentModule{std::move(group), std::move(t)};
}

GroupHom module_phi(const LaurentModule& m) { return hom_sub(identity_hom(m.group), m.t); }

bool is_t_closed(const LaurentModule& m, const Subgroup& s) {
  for (i64 e : s.elements)
    if (!s.contains(hom_apply_index(m.t, e))) return false;
  return true;
}

std::vector<Subgroup> submodules(const LaurentModule& m, i64 element_cap) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(m.group, element_cap))
    if (is_t_closed(m, s)) out.push_back(std::move(s));
  return out;
}

static std::vector<Subgroup> minimal_among(const LaurentModule& m,
                                           const std::vector<Subgroup>& subgroups) {
  std::vector<Subgroup> subs;
  for (const auto& s : subgroups)
    if (is_t_closed(m, s)) subs.push_back(s);
  std::vector<Subgroup> minimal;
  for (const auto& s : subs) {
    if (s.size() == 1) continue;
    bool is_min = true;
    for (const auto& t : subs) {
      if (t.size() == 1 || t.elements == s.elements) continue;
      if (std::includes(s.elements.begin(), s.elements.end(), t.elements.begin(),
                        t.elements.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(s);
  }
  return minimal;
}

static std::vector<Subgroup> minimal_submodules(const LaurentModule& m, i64 element_cap) {
  return minimal_among(m, all_subgroups(m.group, element_cap));
}

bool is_si_module(const LaurentModule& m, i64 element_cap) {
  if (m.group.size() == 1) return false;
  return minimal_submodules(m, element_cap).size() == 1;
}

bool is_si_module(const LaurentModule& m, const std::vector<Subgroup>& subgroups) {
  if (m.group.size() == 1) return false;
  return minimal_among(m, subgroups).size() == 1;
}

Subgroup socle(const LaurentModule& m, i64 element_cap) {
  auto minimal = minimal_submodules(m, element_cap);
  if (minimal.empty()) return trivial_subgroup(m.group);
  std::vector<i64> gens;
  for (const auto& s : minimal) gens.insert(gens.end(), s.elements.begin(), s.elements.end());
  return subgroup_generated(m.group, gens);
}

// ---------------------------------------------------------------------------
// Hom enumeration

std::vector<GroupHom> enumerate_homs(const FinAbGroup& source, const FinAbGroup& target,
                                     i64 cap) {
  std::size_t k = source.rank();
  i64 tn = target.size();
  // Per-generator candidate images: elements annihilated by the generator order.
  std::vector<std::vector<i64>> candidates(k);
  i64 total = 1;
  for (std::size_t c = 0; c < k; ++c) {
    for (i64 y = 0; y < tn; ++y)
      if (target.index(target.reduce([&] {
            Coords cy = target.coords(y);
            for (auto& x : cy) x *= source.orders[c];
            return cy;
          }())) == 0)
        candidates[c].push_back(y);
    total *= static_cast<i64>(candidates[c].size());
    if (total > cap) throw CapExceeded("enumerate_homs: candidate space exceeds cap");
  }
  std::vector<GroupHom> out;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::vector<std::vector<i64>> m(target.rank(), std::vector<i64>(k, 0));
    for (std::size_t c = 0; c < k; ++c) {
      Coords img = target.coords(candidates[c][pick[c]]);
      for (std::size_t r = 0; r < target.rank(); ++r) m[r][c] = img[r];
    }
    out.push_back(make_hom(source, target, std::move(m)));
    std::size_t c = 0;
    for (; c < k; ++c) {
      if (++pick[c] < candidates[c].size()) break;
      pick[c] = 0;
    }
    if (c == k) break;
  }
  return out;
}

std::vector<GroupHom> enumerate_isos(const FinAbGroup& source, const FinAbGroup& target,
                                     i64 element_cap) {
  std::vector<GroupHom> out;
  if (source.size() != target.size()) return out;
  if (source.size() > element_cap)
    throw CapExceeded("enumerate_isos: carrier larger than automorphism-enumeration cap");
  std::size_t k = source.rank();
  i64 tn = target.size();
  // An isomorphism maps each generator to an element of exactly its order.
  std::vector<std::vector<i64>> candidates(k);
  for (std::size_t c = 0; c < k; ++c)
    for (i64 y = 0; y < tn; ++y)
      if (target.elem_order(y) == source.orders[c]) candidates[c].push_back(y);
  for (std::size_t c = 0; c < k; ++c)
    if (candidates[c].empty()) return out;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::vector<std::vector<i64>> m(target.rank(), std::vector<i64>(k, 0));
    for (std::size_t c = 0; c < k; ++c) {
      Coords img = target.coords(candidates[c][pick[c]]);
      for (std::size_t r = 0; r < target.rank(); ++r) m[r][c] = img[r];
    }
    GroupHom h = make_hom(source, target, std::move(m));
    if (is_bijective_hom(h)) out.push_back(std::move(h));
    std::size_t c = 0;
    for (; c < k; ++c) {
      if (++pick[c] < candidates[c].size()) break;
      pick[c] = 0;
    }
    if (c == k) break;
  }
  return out;
}

std::vector<GroupHom> automorphisms(const FinAbGroup& g, i64 element_cap) {
  return enumerate_isos(g, g, element_cap);
}

std::vector<FinAbGroup> abelian_groups_of_order(i64 n) {
  if (n < 1) throw DomainError("group order must be positive");
  if (n == 1) return {FinAbGroup{}};
  // Factorize.
  std::vector<std::pair<i64, i64>> factors;  // (prime, exponent)
  i64 m = n;
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      i64 e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
  }
  if (m > 1) factors.emplace_back(m, 1);
  // Partitions of each exponent, parts descending.
  std::function<std::vector<std::vector<i64>>(i64, i64)> partitions = [&](i64 e, i64 maxpart) {
    std::vector<std::vector<i64>> out;
    if (e == 0) {
      out.push_back({});
      return out;
    }
    for (i64 first = std::min(e, maxpart); first >= 1; --first)
      for (auto rest : partitions(e - first, first)) {
        rest.insert(rest.begin(), first);
        out.push_back(std::move(rest));
      }
    return out;
  };
  std::vector<FinAbGroup> groups{FinAbGroup{}};
  for (auto [p, e] : factors) {
    std::vector<FinAbGroup> next;
    for (const auto& part : partitions(e, e))
      for (const auto& g : groups) {
        std::vector<i64> orders = g.orders;
        for (i64 part_e : part) {
          i64 q = 1;
          for (i64 i = 0; i < part_e; ++i) q *= p;
          orders.push_back(q);
        }
        next.push_back(FinAbGroup{orders});
      }
    groups = std::move(next);
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Smith normal form with row-transform tracking, and group decomposition.

namespace {

struct SmithResult {
  std::vector<std::vector<i64>> U, Uinv;  // U*M has the diagonal form; Uinv = U^-1
  std::vector<i64> diag;
};

SmithResult smith_rows(std::vector<std::vector<i64>> M) {
  std::size_t n = M.size();
  std::size_t m = n ? M[0].size() : 0;
  std::vector<std::vector<i64>> U(n, std::vector<i64>(n, 0)), Uinv(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = Uinv[i][i] = 1;

  auto row_sub = [&](std::size_t i, std::size_t t, i64 q) {
    // row_i -= q*row_t ; inverse: col_t += q*col_i on Uinv
    for (std::size_t c = 0; c < m; ++c) M[i][c] -= q * M[t][c];
    for (std::size_t c = 0; c < n; ++c) U[i][c] -= q * U[t][c];
    for (std::size_t r = 0; r < n; ++r) Uinv[r][t] += q * Uinv[r][i];
  };
  auto row_swap = [&](std::size_t i, std::size_t t) {
    std::swap(M[i], M[t]);
    std::swap(U[i], U[t]);
    for (std::size_t r = 0; r < n; ++r) std::swap(Uinv[r][i], Uinv[r][t]);
  };
  auto row_neg = [&](std::size_t i) {
    for (auto& x : M[i]) x = -x;
    for (auto& x : U[i]) x = -x;
    for (std::size_t r = 0; r < n; ++r) Uinv[r][i] = -Uinv[r][i];
  };
  auto col_sub = [&](std::size_t j, std::size_t t, i64 q) {
    for (std::size_t r = 0; r < n; ++r) M[r][j] -= q * M[r][t];
  };
  auto col_swap = [&](std::size_t j, std::size_t t) {
    for (std::size_t r = 0; r < n; ++r) std::swap(M[r][j], M[r][t]);
  };

  std::size_t rank = std::min(n, m);
  std::vector<i64> diag;
  for (std::size_t t = 0; t < rank; ++t) {
    // Find a pivot of minimal absolute value in the remaining submatrix.
    while (true) {
      std::size_t pi = t, pj = t;
      i64 best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (M[i][j] != 0 && (best == 0 || std::abs(M[i][j]) < best)) {
            best = std::abs(M[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) break;  // all zero: done with this and later pivots
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);
      if (M[t][t] < 0) row_neg(t);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i)
        if (M[i][t] != 0) {
          i64 q = M[i][t] / M[t][t];
          row_sub(i, t, q);
          if (M[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < m; ++j)
        if (M[t][j] != 0) {
          i64 q = M[t][j] / M[t][t];
          col_sub(j, t, q);
          if (M[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < n && !fixed; ++i)
        for (std::size_t j = t + 1; j < m && !fixed; ++j)
          if (M[i][j] % M[t][t] != 0) {
            row_sub(t, i, -1);  // row_t += row_i
            fixed = true;
          }
      if (!fixed) break;
    }
    if (M[t][t] == 0) break;
    diag.push_back(M[t][t]);
  }
  return SmithResult{std::move(U), std::move(Uinv), std::move(diag)};
}

}  // namespace

Decomposition decompose_abelian(const AbelianPresentation& p) {
  i64 n = p.count;
  if (n < 1) throw DomainError("empty presentation");
  Decomposition out;
  if (n == 1) {
    out.group = FinAbGroup{};
    out.to_index = {0};
    out.from_index = {0};
    return out;
  }
  // Element orders.
  std::vector<i64> ord(n, 0);
  for (i64 a = 0; a < n; ++a) {
    i64 x = a, k = 1;
    while (x != p.zero) {
      x = p.add(x, a);
      ++k;
      if (k > n) throw DomainError("presentation element order exceeds carrier size");
    }
    ord[a] = k;
  }
  // Relation columns for Z^n ->> G, e_a -> a:
  //   ord(a)*e_a, and e_a + e_b - e_{a+b} for a <= b.
  std::vector<std::vector<i64>> cols;
  for (i64 a = 0; a < n; ++a) {
    std::vector<i64> c(n, 0);
    c[a] = ord[a];
    cols.push_back(std::move(c));
  }
  for (i64 a = 0; a < n; ++a)
    for (i64 b = a; b < n; ++b) {
      std::vector<i64> c(n, 0);
      c[a] += 1;
      c[b] += 1;
      c[p.add(a, b)] -= 1;
      if (std::any_of(c.begin(), c.end(), [](i64 x) { return x != 0; })) cols.push_back(std::move(c));
    }
  std::vector<std::vector<i64>> M(n, std::vector<i64>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (i64 r = 0; r < n; ++r) M[r][j] = cols[j][r];
  SmithResult snf = smith_rows(std::move(M));

  std::vector<i64> diag(n, 0);
  for (std::size_t i = 0; i < snf.diag.size(); ++i) diag[i] = snf.diag[i];
  std::vector<std::size_t> kept;  // rows with d > 1 carry the group
  i64 prod = 1;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    if (diag[i] == 0) throw DomainError("presentation quotient is infinite (not a group table)");
    if (diag[i] > 1) {
      kept.push_back(i);
      prod *= diag[i];
    }
  }
  if (prod != n) throw DomainError("presentation is not a cancellative abelian group");

  std::vector<i64> orders;
  for (std::size_t i : kept) orders.push_back(diag[i]);
  out.group = FinAbGroup{orders};

  out.to_index.assign(n, 0);
  for (i64 a = 0; a < n; ++a) {
    Coords c(kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) c[j] = snf.U[kept[j]][a];
    out.to_index[a] = out.group.index(out.group.reduce(std::move(c)));
  }
  // Basis elements: preimages of the unit vectors under U.
  std::vector<i64> basis(kept.size());
  auto scalar_mult = [&](i64 k, i64 a) {
    i64 acc = p.zero;
    i64 kk = ((k % n) + n) % n;  // a has order dividing n
    for (i64 i = 0; i < kk; ++i) acc = p.add(acc, a);
    return acc;
  };
  for (std::size_t j = 0; j < kept.size(); ++j) {
    i64 acc = p.zero;
    for (i64 r = 0; r < n; ++r) acc = p.add(acc, scalar_mult(snf.Uinv[r][kept[j]], r));
    basis[j] = acc;
  }
  out.from_index.assign(out.group.size(), p.zero);
  for (i64 idx = 0; idx < out.group.size(); ++idx) {
    Coords c = out.group.coords(idx);
    i64 acc = p.zero;
    for (std::size_t j = 0; j < kept.size(); ++j) acc = p.add(acc, scalar_mult(c[j], basis[j]));
    out.from_index[idx] = acc;
  }
  for (i64 a = 0; a < n; ++a)
    if (out.from_index[out.to_index[a]] != a)
      throw DomainError("abelian decomposition failed to produce a bijection");
  return out;
}

FinAbGroup invariant_factors(const FinAbGroup& g) {
  if (g.size() == 1) return FinAbGroup{};
  FinAbGroup gr = g;
  AbelianPresentation p{gr.size(), 0, [&gr](i64 a, i64 b) { return gr.add(a, b); }};
  auto d = decompose_abelian(p);
  return d.group;
}

}  // namespace qf
