#include "qforge/construct.hpp"

#include <algorithm>
#include <map>

namespace qf {

Quandle projection_quandle(int n) {
  if (n < 1) throw DomainError("projection quandle needs n >= 1");
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[a * n + b] = b;
  return validate_quandle_flat(n, std::move(mult));
}

Quandle alexander(const FinAbGroup& g, const GroupHom& f) {
  if (f.source != g || f.target != g) throw DomainError("alexander: hom must act on the group");
  if (!is_automorphism(f)) throw DomainError("alexander: f is not an automorphism");
  int n = static_cast<int>(g.size());
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (i64 x = 0; x < n; ++x) {
    i64 px = g.sub(x, hom_apply_index(f, x));  // (1-f)(x)
    for (i64 y = 0; y < n; ++y)
      mult[x * n + y] = static_cast<int>(g.add(px, hom_apply_index(f, y)));
  }
  return validate_quandle_flat(n, std::move(mult));
}

Quandle alexander_cyclic(i64 n, i64 t) {
  FinAbGroup g{{n}};
  return alexander(g, scalar_hom(g, t));
}

SiqSpec validate_siq_spec(LaurentModule module, std::vector<i64> C, bool allow_non_si) {
  const FinAbGroup& a = module.group;
  for (i64 c : C)
    if (c < 0 || c >= a.size()) throw SpecViolation("C element out of range");
  GroupHom phi = module_phi(module);
  Subgroup phi_a = image(phi);
  // Pairwise distinct cosets of phi(A).
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j)
      if (phi_a.contains(a.sub(C[i], C[j])))
        throw SpecViolation("C elements fall in one coset of phi(A)");
  // C together with phi(A) generates A.
  std::vector<i64> gens = C;
  gens.insert(gens.end(), phi_a.elements.begin(), phi_a.elements.end());
  if (subgroup_generated(a, gens).size() != a.size())
    throw SpecViolation("C together with phi(A) does not generate A");
  if (!C.empty() && static_cast<i64>(phi_a.size()) == a.size())
    throw SpecViolation("phi must be non-injective when C is nonempty");
  if (!allow_non_si && !is_si_module(module))
    throw SpecViolation("module (A,t) is not subdirectly irreducible");
  return SiqSpec{std::move(module), std::move(C)};
}

AffineMesh siq_mesh(const SiqSpec& spec) {
  const FinAbGroup& a = spec.module.group;
  GroupHom phi = module_phi(spec.module);
  Subgroup s = image(phi);
  // phi(A) as an abstract carrier H with translation maps to/from A.
  AbelianPresentation pres{
      s.size(), static_cast<i64>(std::lower_bound(s.elements.begin(), s.elements.end(), 0) -
                                 s.elements.begin()),
      [&](i64 x, i64 y) {
        i64 sum = a.add(s.elements[x], s.elements[y]);
        return static_cast<i64>(std::lower_bound(s.elements.begin(), s.elements.end(), sum) -
                                s.elements.begin());
      }};
  Decomposition dec = decompose_abelian(pres);
  const FinAbGroup& h = dec.group;
  auto h_of = [&](i64 elem_in_a) {  // A-element known to lie in phi(A) -> H index
    auto it = std::lower_bound(s.elements.begin(), s.elements.end(), elem_in_a);
    if (it == s.elements.end() || *it != elem_in_a)
      throw ConsistencyFailure("element expected in phi(A)");
    return dec.to_index[it - s.elements.begin()];
  };
  auto a_of = [&](i64 h_idx) { return s.elements[dec.from_index[h_idx]]; };
  auto hom_by_images = [&](const FinAbGroup& src, const FinAbGroup& tgt, auto&& f) {
    std::vector<std::vector<i64>> mat(tgt.rank(), std::vector<i64>(src.rank(), 0));
    for (std::size_t c = 0; c < src.rank(); ++c) {
      Coords unit(src.rank(), 0);
      unit[c] = 1;
      Coords img = tgt.coords(f(src.index(unit)));
      for (std::size_t r = 0; r < tgt.rank(); ++r) mat[r][c] = img[r];
    }
    GroupHom hm = make_hom(src, tgt, std::move(mat));
    for (i64 x = 0; x < src.size(); ++x)
      if (hom_apply_index(hm, x) != f(x))
        throw ConsistencyFailure("generator images do not extend to the map");
    return hm;
  };
  std::size_t k = 1 + spec.C.size();
  AffineMesh m;
  m.groups.push_back(a);
  for (std::size_t i = 1; i < k; ++i) m.groups.push_back(h);
  GroupHom phi_h = hom_by_images(h, h, [&](i64 x) { return h_of(hom_apply_index(phi, a_of(x))); });
  GroupHom incl = hom_by_images(h, a, [&](i64 x) { return a_of(x); });
  GroupHom phi_sq = hom_by_images(a, h, [&](i64 x) {
    return h_of(hom_apply_index(phi, hom_apply_index(phi, x)));
  });
  m.phis.assign(k, std::vector<GroupHom>(k));
  m.consts.assign(k, std::vector<i64>(k, 0));
  m.phis[0][0] = phi;
  for (std::size_t j = 1; j < k; ++j) {
    m.phis[0][j] = phi_sq;
    m.phis[j][0] = incl;
    for (std::size_t i = 1; i < k; ++i) m.phis[i][j] = phi_h;
  }
  for (std::size_t i = 1; i < k; ++i) {
    i64 ci = spec.C[i - 1];
    m.consts[i][0] = ci;
    m.consts[0][i] = h_of(a.neg(hom_apply_index(phi, ci)));
    for (std::size_t j = 1; j < k; ++j)
      if (i != j) m.consts[i][j] = h_of(hom_apply_index(phi, a.sub(ci, spec.C[j - 1])));
  }
  return validate_mesh(std::move(m));
}

LabeledSum siq(const SiqSpec& spec) {
  LabeledSum ls = sum_mesh(siq_mesh(spec));
  // Independent oracle: rebuild the table from the construction's four
  // operation clauses and compare elementwise.
  const FinAbGroup& a = spec.module.group;
  const GroupHom& t = spec.module.t;
  GroupHom phi = module_phi(spec.module);
  int n = ls.quandle.n;
  auto in_a = [&](i64 x) { return ls.index_of[0][x]; };
  // Block j (1-based) element with H-index h corresponds to the A-element
  // incl(h); recover it through the mesh's inclusion hom.
  const GroupHom& incl = ls.mesh.phis[1 < ls.mesh.summands() ? 1 : 0][0];
  std::map<i64, i64> h_index;  // A-value in phi(A) -> H element index
  if (ls.mesh.summands() > 1)
    for (i64 hx = 0; hx < ls.mesh.groups[1].size(); ++hx)
      h_index[hom_apply_index(incl, hx)] = hx;
  auto find_h = [&](i64 val) {
    auto it = h_index.find(val);
    if (it == h_index.end()) throw ConsistencyFailure("siq product left phi(A)");
    return it->second;
  };
  for (int x = 0; x < n; ++x) {
    auto [i, xa] = ls.element_of[x];
    i64 ax = (i == 0) ? xa : hom_apply_index(incl, xa);  // value in A
    for (int y = 0; y < n; ++y) {
      auto [j, yb] = ls.element_of[y];
      i64 by = (j == 0) ? yb : hom_apply_index(incl, yb);
      int expect;
      if (i == 0 && j == 0) {
        expect = in_a(a.add(hom_apply_index(phi, ax), hom_apply_index(t, by)));
      } else if (i != 0 && j != 0) {
        i64 shift = a.add(ax, a.sub(spec.C[i - 1], spec.C[j - 1]));
        i64 val = a.add(hom_apply_index(phi, shift), hom_apply_index(t, by));
        expect = ls.index_of[j][find_h(val)];
      } else if (i != 0 && j == 0) {
        expect = in_a(a.add(a.add(ax, hom_apply_index(t, by)), spec.C[i - 1]));
      } else {
        i64 val = a.add(
            hom_apply_index(phi, a.sub(hom_apply_index(phi, ax), spec.C[j - 1])),
            hom_apply_index(t, by));
        expect = ls.index_of[j][find_h(val)];
      }
      if (expect != ls.quandle.mult(x, y))
        throw ConsistencyFailure("siq clauses disagree with the mesh sum");
    }
  }
  return ls;
}

std::vector<GalleryItem> gallery() {
  std::vector<GalleryItem> items;
  auto add = [&](GalleryItem it) { items.push_back(std::move(it)); };

  // (Z_4,3) together with its two-orbit mesh from the running example.
  {
    GalleryItem it;
    it.name = "alexander-z4-3";
    it.quandle = alexander_cyclic(4, 3);
    FinAbGroup z2{{2}};
    AffineMesh m;
    m.groups = {z2, z2};
    m.phis.assign(2, std::vector<GroupHom>(2, zero_hom(z2, z2)));
    m.consts = {{0, 1}, {1, 0}};
    it.mesh = validate_mesh(std::move(m));
    it.expect_involutory = true;
    add(std::move(it));
  }

  auto add_siq = [&](std::string name, SiqSpec spec, bool involutory = false) {
    GalleryItem it;
    it.name = std::move(name);
    it.spec = spec;
    it.mesh = siq_mesh(spec);
    it.quandle = siq(spec).quandle;
    it.expect_involutory = involutory;
    add(std::move(it));
  };

  // The 6-element pair.
  add_siq("siq-z4-3-c1", siq_spec_cyclic(4, 3, {1}), true);
  {
    FinAbGroup z22{{2, 2}};
    GroupHom t = make_hom(z22, z22, {{1, 0}, {1, 1}});
    add_siq("siq-z2sq-c10", validate_siq_spec(make_module(z22, t), {z22.index({1, 0})}));
  }
  // The 8-element pair.
  add_siq("siq-z4-3-c01", siq_spec_cyclic(4, 3, {0, 1}), true);
  {
    FinAbGroup z22{{2, 2}};
    GroupHom t = make_hom(z22, z22, {{1, 0}, {1, 1}});
    add_siq("siq-z2sq-c00-c10",
            validate_siq_spec(make_module(z22, t), {0, z22.index({1, 0})}));
  }
  // The 70-element pair over Z_49.
  add_siq("siq-z49-43-134", siq_spec_cyclic(49, 43, {1, 3, 4}));
  add_siq("siq-z49-43-256", siq_spec_cyclic(49, 43, {2, 5, 6}));
  // siq(Z_{p^m}, 1-p, {1}) instances.
  add_siq("siq-z9-7-c1", siq_spec_cyclic(9, 7, {1}));
  // Strictly 2-reductive instances (t = 1).
  add_siq("siq-z2-1-c1", siq_spec_cyclic(2, 1, {1}), true);
  add_siq("siq-z4-1-c1", siq_spec_cyclic(4, 1, {1}));
  add_siq("siq-z3-1-c12", siq_spec_cyclic(3, 1, {1, 2}));
  // Involutory witnesses.
  add({"proj-z2", projection_quandle(2), {}, {}, true});
  add({"alexander-z9-neg1", alexander_cyclic(9, 8), {}, {}, true});
  // Latin instances.
  add({"alexander-z5-2", alexander_cyclic(5, 2), {}, {}, false});
  add({"alexander-z9-2", alexander_cyclic(9, 2), {}, {}, false});
  add({"alexander-z3-2", alexander_cyclic(3, 2), {}, {}, true});
  // Projections and the quasi-reductive non-reductive control.
  add({"proj-1", projection_quandle(1), {}, {}, true});
  add({"proj-3", projection_quandle(3), {}, {}, true});
  add({"alexander-z6-neg1", alexander_cyclic(6, 5), {}, {}, true});
  return items;
}

SiqSpec siq_spec_cyclic(i64 n, i64 t, std::vector<i64> C, bool allow_non_si) {
  FinAbGroup g{{n}};
  return validate_siq_spec(make_module(g, scalar_hom(g, t)), std::move(C), allow_non_si);
}

}  // namespace qf
