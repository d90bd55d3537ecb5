#include "qforge/quandle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qf {

Quandle validate_quandle_flat(int n, std::vector<int> mult) {
  if (n < 1 || static_cast<int>(mult.size()) != n * n)
    throw AxiomViolation("shape", {-1, -1, -1});
  for (int v : mult)
    if (v < 0 || v >= n) throw AxiomViolation("shape", {-1, -1, -1});
  Quandle q;
  q.n = n;
  q.mult_ = std::move(mult);
  q.ldiv_.assign(n * n, -1);
  for (int a = 0; a < n; ++a) {
    if (q.mult(a, a) != a) throw AxiomViolation("idempotency", {a, -1, -1});
    for (int b = 0; b < n; ++b) {
      int c = q.mult(a, b);
      if (q.ldiv_[a * n + c] != -1) throw AxiomViolation("left-quasigroup", {a, b, c});
      q.ldiv_[a * n + c] = b;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (q.mult(x, q.mult(y, z)) != q.mult(q.mult(x, y), q.mult(x, z)))
          throw AxiomViolation("left-distributivity", {x, y, z});
  return q;
}

Quandle validate_quandle(const std::vector<std::vector<int>>& table) {
  int n = static_cast<int>(table.size());
  std::vector<int> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw AxiomViolation("shape", {-1, -1, -1});
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_quandle_flat(n, std::move(flat));
}

Permutation identity_perm(int n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation r;
  r.images.resize(f.images.size());
  for (std::size_t x = 0; x < r.images.size(); ++x) r.images[x] = f.images[g.images[x]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r;
  r.images.resize(p.images.size());
  for (std::size_t x = 0; x < p.images.size(); ++x) r.images[p.images[x]] = static_cast<int>(x);
  return r;
}

std::vector<int> cycle_type(const Permutation& p) {
  int n = p.size();
  std::vector<char> seen(n, 0);
  std::vector<int> lens;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    int len = 0, y = x;
    while (!seen[y]) {
      seen[y] = 1;
      y = p.images[y];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

Permutation left_translation(const Quandle& q, int a) {
  Permutation p;
  p.images.assign(q.mult_.begin() + a * q.n, q.mult_.begin() + (a + 1) * q.n);
  return p;
}

std::vector<Permutation> displacement_generators(const Quandle& q) {
  Permutation l0inv = inverse(left_translation(q, 0));
  std::vector<Permutation> gens;
  gens.reserve(q.n);
  for (int a = 0; a < q.n; ++a) gens.push_back(compose(left_translation(q, a), l0inv));
  return gens;
}

namespace {

// The three mediality identities; identity_index selects one.
inline bool medial_at(const Quandle& q, int id, int x, int y, int u, int v) {
  switch (id) {
    case 0: return q.mult(q.mult(x, y), q.mult(u, v)) == q.mult(q.mult(x, u), q.mult(y, v));
    case 1: return q.ldiv(q.ldiv(x, y), q.ldiv(u, v)) == q.ldiv(q.ldiv(x, u), q.ldiv(y, v));
    default: return q.mult(q.ldiv(x, y), q.ldiv(u, v)) == q.ldiv(q.mult(x, u), q.mult(y, v));
  }
}

}  // namespace

std::optional<MedialWitness> medial_check_serial(const Quandle& q) {
  int n = q.n;
  for (int id = 0; id < 3; ++id)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            if (!medial_at(q, id, x, y, u, v))
              return MedialWitness{id, {x, y, u, v}};
  return std::nullopt;
}

std::optional<MedialWitness> medial_check(const Quandle& q) {
  int n = q.n;
  // Parallelize over (id, x); keep the lexicographically first witness.
  int found_key = 3 * n;  // id * n + x, sentinel = none
  MedialWitness w{};
#ifdef QF_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int key = 0; key < 3 * n; ++key) {
    int id = key / n, x = key % n;
    int fk = found_key;
#ifdef QF_HAVE_OPENMP
#pragma omp atomic read
    fk = found_key;
#endif
    if (fk < key) continue;
    bool bail = false;
    for (int y = 0; y < n && !bail; ++y)
      for (int u = 0; u < n && !bail; ++u)
        for (int v = 0; v < n; ++v)
          if (!medial_at(q, id, x, y, u, v)) {
#ifdef QF_HAVE_OPENMP
#pragma omp critical
#endif
            {
              if (key < found_key) {
                found_key = key;
                w = MedialWitness{id, {x, y, u, v}};
              }
            }
            bail = true;
            break;
          }
  }
  if (found_key < 3 * n) return w;
  return std::nullopt;
}

bool is_medial(const Quandle& q) { return !medial_check(q).has_value(); }

std::vector<int> orbit_of(const Quandle& q) {
  auto gens = displacement_generators(q);
  std::vector<int> orb(q.n, -1);
  int next = 0;
  for (int s = 0; s < q.n; ++s) {
    if (orb[s] != -1) continue;
    int id = next++;
    std::vector<int> stack{s};
    orb[s] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        for (int y : {g.images[x], inverse(g).images[x]}) {
          if (orb[y] == -1) {
            orb[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
  }
  return orb;
}

std::vector<std::vector<int>> orbits(const Quandle& q) {
  auto orb = orbit_of(q);
  int k = *std::max_element(orb.begin(), orb.end()) + 1;
  std::vector<std::vector<int>> out(k);
  for (int x = 0; x < q.n; ++x) out[orb[x]].push_back(x);
  return out;
}

bool is_connected(const Quandle& q) { return orbits(q).size() == 1; }

bool is_latin(const Quandle& q) {
  for (int b = 0; b < q.n; ++b) {
    std::vector<char> seen(q.n, 0);
    for (int a = 0; a < q.n; ++a) {
      int c = q.mult(a, b);
      if (seen[c]) return false;
      seen[c] = 1;
    }
  }
  return true;
}

bool is_involutory(const Quandle& q) {
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b)
      if (q.mult(a, q.mult(a, b)) != b) return false;
  return true;
}

std::optional<int> reductivity_degree(const Quandle& q) {
  // x_0 = x, x_{k+1} = x_k * y; m-reductive when x_{m-1} = y always.
  std::vector<int> cur(q.n * q.n), nxt(q.n * q.n);
  for (int x = 0; x < q.n; ++x)
    for (int y = 0; y < q.n; ++y) cur[x * q.n + y] = x;
  for (int m = 1; m <= q.n + 1; ++m) {
    for (int x = 0; x < q.n; ++x)
      for (int y = 0; y < q.n; ++y) nxt[x * q.n + y] = q.mult(cur[x * q.n + y], y);
    std::swap(cur, nxt);
    bool all = true;
    for (int x = 0; x < q.n && all; ++x)
      for (int y = 0; y < q.n; ++y)
        if (cur[x * q.n + y] != y) {
          all = false;
          break;
        }
    if (all) return m;
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> quasi_reductive_witness(const Quandle& q) {
  auto orb = orbit_of(q);
  for (int a = 0; a < q.n; ++a)
    for (int b = a + 1; b < q.n; ++b)
      if (orb[a] == orb[b] &&
          std::equal(q.mult_.begin() + a * q.n, q.mult_.begin() + (a + 1) * q.n,
                     q.mult_.begin() + b * q.n))
        return std::make_pair(a, b);
  return std::nullopt;
}

bool is_quasi_reductive(const Quandle& q) { return quasi_reductive_witness(q).has_value(); }

PermGroupClosure close_group(const std::vector<Permutation>& gens, i64 cap) {
  PermGroupClosure out;
  out.generators = gens;
  if (gens.empty()) return out;
  int n = gens.front().size();
  std::set<Permutation> seen{identity_perm(n)};
  std::vector<Permutation> queue{identity_perm(n)};
  std::vector<Permutation> allgens = gens;
  for (const auto& g : gens) allgens.push_back(inverse(g));
  while (!queue.empty()) {
    Permutation x = queue.back();
    queue.pop_back();
    for (const auto& g : allgens) {
      Permutation y = compose(g, x);
      if (seen.insert(y).second) {
        if (static_cast<i64>(seen.size()) > cap) {
          out.capped = true;
          return out;
        }
        queue.push_back(std::move(y));
      }
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

PermGroupClosure lmlt_closure(const Quandle& q, i64 cap) {
  std::vector<Permutation> gens;
  for (int a = 0; a < q.n; ++a) gens.push_back(left_translation(q, a));
  return close_group(gens, cap);
}

PermGroupClosure dis_closure(const Quandle& q, i64 cap) {
  return close_group(displacement_generators(q), cap);
}

std::optional<int> lmlt_nilpotency_degree(const Quandle& q, i64 cap) {
  PermGroupClosure g = lmlt_closure(q, cap);
  if (g.capped) throw CapExceeded("lmlt closure exceeded element cap");
  // Lower central series: gamma_1 = G, gamma_{k+1} = [gamma_k, G].
  std::vector<Permutation> gamma = g.elements;
  int n = q.n;
  Permutation id = identity_perm(n);
  int degree = 0;
  while (!(gamma.size() == 1 && gamma.front() == id)) {
    std::set<Permutation> comm_gens;
    for (const auto& a : gamma)
      for (const auto& b : g.elements) {
        Permutation c = compose(compose(inverse(a), inverse(b)), compose(a, b));
        comm_gens.insert(std::move(c));
      }
    PermGroupClosure next =
        close_group(std::vector<Permutation>(comm_gens.begin(), comm_gens.end()), cap);
    if (next.capped) throw CapExceeded("lower central series closure exceeded cap");
    if (next.elements == gamma) return std::nullopt;  // stabilized above trivial
    gamma = std::move(next.elements);
    ++degree;
    if (degree > static_cast<int>(g.elements.size())) return std::nullopt;
  }
  return degree;
}

}  // namespace qf
