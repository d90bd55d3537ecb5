// qforge: command-line surface over the medial-quandle library.
//
// Subcommands: check, mesh {validate,sum,canonical}, congr {list,monolith,si},
// make {projection,alexander,siq}, iso, iso-mesh, enumerate, report,
// gallery export.  Output is aligned text or JSON (--format); iso and
// iso-mesh use the exit code (0 isomorphic, 1 not) for scripting.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qforge/enumerate.hpp"
#include "qforge/json_io.hpp"

using namespace qf;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "qforge 1.0.0";

struct Options {
  RunConfig cfg;
  std::string format = "text";
};

// Deterministic 64-bit FNV-1a over the run configuration, embedded in every
// report so identical configs produce byte-identical files.
std::string config_hash(const RunConfig& c) {
  std::ostringstream os;
  os << c.cap_subgroup << ',' << c.cap_group << ',' << c.cap_lattice << ','
     << c.cap_aut << ',' << c.jobs << ',' << c.seed;
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : os.str()) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// QFORGE_CAPS="lattice=500,group=2000,subgroup=800,aut=64" overrides the
// corresponding caps, taking precedence over flags.
void apply_env_caps(RunConfig& cfg) {
  const char* env = std::getenv("QFORGE_CAPS");
  if (!env) return;
  std::istringstream in(env);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("QFORGE_CAPS: expected key=value, got " + item);
    std::string key = item.substr(0, eq);
    i64 val = std::stoll(item.substr(eq + 1));
    if (val <= 0) throw DomainError("QFORGE_CAPS: caps must be positive");
    if (key == "lattice")
      cfg.cap_lattice = val;
    else if (key == "group")
      cfg.cap_group = val;
    else if (key == "subgroup")
      cfg.cap_subgroup = val;
    else if (key == "aut")
      cfg.cap_aut = val;
    else
      throw DomainError("QFORGE_CAPS: unknown cap " + key);
  }
}

Quandle load_quandle(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return quandle_from_csv(text);
  return quandle_from_json(text);
}

AffineMesh load_mesh(const std::string& path) { return mesh_from_json(read_file(path)); }

std::string group_name(const FinAbGroup& g) {
  if (g.orders.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < g.orders.size(); ++i)
    s += (i ? " x Z_" : "Z_") + std::to_string(g.orders[i]);
  return s;
}

void print_table(const Quandle& q) {
  int width = q.n > 10 ? 3 : 2;
  for (int a = 0; a < q.n; ++a) {
    for (int b = 0; b < q.n; ++b) std::printf("%*d", width, q.mult(a, b));
    std::printf("\n");
  }
}

std::string blocks_str(const Congruence& c) {
  std::string s;
  for (const auto& blk : c.blocks()) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < blk.size(); ++i)
      s += (i ? "," : "") + std::to_string(blk[i]);
    s += "}";
  }
  return s;
}

json quandle_report(const Quandle& q, const Options& opt) {
  auto w = medial_check(q);
  json j{{"size", q.n},
         {"medial", !w.has_value()},
         {"orbits", orbits(q)},
         {"connected", is_connected(q)},
         {"latin", is_latin(q)},
         {"involutory", is_involutory(q)}};
  if (w) j["medial_witness"] = {{"identity", w->identity_index}, {"elements", w->elems}};
  if (auto rd = reductivity_degree(q)) j["reductivity"] = *rd;
  j["quasi_reductive"] = is_quasi_reductive(q);
  j["subdirectly_irreducible"] = is_subdirectly_irreducible(q);
  if (auto mono = monolith(q)) j["monolith"] = json::parse(congruence_to_json(*mono));
  try {
    j["congruences"] = static_cast<i64>(all_congruences(q, opt.cfg.cap_lattice).size());
  } catch (const CapExceeded&) {
    j["congruences"] = nullptr;
  }
  return j;
}

void print_quandle_report(const json& j) {
  std::printf("size                     %lld\n", j.at("size").get<i64>());
  std::printf("medial                   %s\n", j.at("medial").get<bool>() ? "yes" : "no");
  if (j.contains("medial_witness")) {
    auto& w = j.at("medial_witness");
    std::printf("  identity %lld fails at (%lld,%lld,%lld,%lld)\n",
                w.at("identity").get<i64>(), w.at("elements")[0].get<i64>(),
                w.at("elements")[1].get<i64>(), w.at("elements")[2].get<i64>(),
                w.at("elements")[3].get<i64>());
  }
  std::printf("orbits                   %zu\n", j.at("orbits").size());
  std::printf("connected                %s\n", j.at("connected").get<bool>() ? "yes" : "no");
  std::printf("latin                    %s\n", j.at("latin").get<bool>() ? "yes" : "no");
  std::printf("involutory               %s\n", j.at("involutory").get<bool>() ? "yes" : "no");
  if (j.contains("reductivity"))
    std::printf("reductivity degree       %lld\n", j.at("reductivity").get<i64>());
  else
    std::printf("reductivity degree       none (not reductive)\n");
  std::printf("quasi-reductive          %s\n", j.at("quasi_reductive").get<bool>() ? "yes" : "no");
  std::printf("subdirectly irreducible  %s\n",
              j.at("subdirectly_irreducible").get<bool>() ? "yes" : "no");
  if (j.at("congruences").is_null())
    std::printf("congruences              > cap\n");
  else
    std::printf("congruences              %lld\n", j.at("congruences").get<i64>());
}

void emit(const Options& opt, const json& j, const std::function<void()>& text) {
  if (opt.format == "json")
    std::printf("%s\n", j.dump(2).c_str());
  else
    text();
}

// ---------------------------------------------------------------------------
// report: desk-scale claims regenerated as machine-checked tables.

struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool same_up_to_iso(std::vector<Quandle> a, std::vector<Quandle> b) {
  if (a.size() != b.size()) return false;
  for (const Quandle& q : a) {
    bool hit = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (quandle_isomorphic(q, b[i])) {
        b.erase(b.begin() + i);
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

void add_if_new(std::vector<Quandle>& list, const Quandle& q) {
  for (const Quandle& r : list)
    if (quandle_isomorphic(r, q)) return;
  list.push_back(q);
}

// Closed-form family siq(Z_{p^k},1,C) with C containing a generator: the
// strictly 2-reductive subdirectly irreducible quandles.
std::vector<Quandle> two_reductive_family(i64 n) {
  std::vector<Quandle> out;
  // phi = 1 - t = 0, so each element of C contributes one singleton block:
  // the carrier size is |A| + |C|.
  for (i64 g = 2; g < n; ++g) {
    i64 csize = n - g;
    if (csize < 1 || csize > g) continue;
    std::vector<i64> subset(csize);
    std::function<void(i64, i64)> rec = [&](i64 pos, i64 start) {
      if (pos == csize) {
        try {
          Quandle q = siq(siq_spec_cyclic(g, 1, subset)).quandle;
          if (reductivity_degree(q) == 2) add_if_new(out, q);
        } catch (const SpecViolation&) {
        }
        return;
      }
      for (i64 v = start; v < g; ++v) {
        subset[pos] = v;
        rec(pos + 1, v + 1);
      }
    };
    rec(0, 0);
  }
  return out;
}

// The four involutory families: (Z_2,1), (Z_{p^k},-1) for odd p, and
// siq(Z_{2^k},-1,{1}) / siq(Z_{2^k},-1,{0,1}).
std::vector<Quandle> involutory_family(i64 n) {
  std::vector<Quandle> out;
  if (n == 2) add_if_new(out, alexander_cyclic(2, 1));
  bool prime_power_odd = false;
  for (i64 p = 3; p <= n; p += 2) {
    bool prime = p > 1;
    for (i64 d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    for (i64 m = p; m <= n; m *= p)
      if (m == n) prime_power_odd = true;
  }
  if (prime_power_odd) add_if_new(out, alexander_cyclic(n, n - 1));
  for (i64 g = 2; g <= n; g *= 2) {
    i64 b = g == 2 ? 1 : g / 2;  // |phi(A)| for phi = 1 - (-1) = 2
    if (g + b == n) add_if_new(out, siq(siq_spec_cyclic(g, g - 1, {1})).quandle);
    if (g + 2 * b == n) add_if_new(out, siq(siq_spec_cyclic(g, g - 1, {0, 1})).quandle);
  }
  return out;
}

std::vector<Claim> run_claims(const RunConfig& cfg) {
  std::vector<Claim> claims;

  {
    Claim c{"2-reductive SI = siq(Z_p^k,1,C) family, orders 3..12"};
    c.pass = true;
    for (i64 n = 3; n <= 12; ++n)
      if (!same_up_to_iso(two_reductive_si(n, cfg), two_reductive_family(n))) {
        c.pass = false;
        c.detail = "mismatch at order " + std::to_string(n);
        break;
      }
    if (c.pass) c.detail = "exact set equality at every order";
    claims.push_back(c);
  }

  {
    Claim c{"involutory SI = four-family list, orders 2..16"};
    c.pass = true;
    for (i64 n = 2; n <= 16; ++n)
      if (!same_up_to_iso(involutory_si(n, cfg), involutory_family(n))) {
        c.pass = false;
        c.detail = "mismatch at order " + std::to_string(n);
        break;
      }
    if (c.pass) c.detail = "exact set equality at every order";
    claims.push_back(c);
  }

  {
    Claim c{"Z_49 pair: non-isomorphic, same congruence-lattice shape"};
    LabeledSum a = siq(siq_spec_cyclic(49, 43, {1, 3, 4}));
    LabeledSum b = siq(siq_spec_cyclic(49, 43, {2, 5, 6}));
    bool crit = cyclic_iso_criterion(a.mesh, b.mesh);
    bool iso = quandle_isomorphic(a.quandle, b.quandle).has_value();
    auto profile = [&](const Quandle& q) {
      std::vector<std::vector<i64>> ps;
      for (const Congruence& rho : all_congruences(q, cfg.cap_lattice))
        ps.push_back(rho.block_size_profile());
      std::sort(ps.begin(), ps.end());
      return ps;
    };
    bool same_shape = profile(a.quandle) == profile(b.quandle);
    c.pass = !crit && !iso && same_shape;
    c.detail = std::string("criterion=") + (crit ? "iso" : "non-iso") +
               ", table search=" + (iso ? "iso" : "non-iso") +
               ", lattice profiles " + (same_shape ? "equal" : "differ");
    claims.push_back(c);
  }

  {
    Claim c{"order 6: exactly two reductive-not-2-reductive, both SI"};
    auto found = reductive_not_2reductive(6, cfg);
    LabeledSum a = siq(siq_spec_cyclic(4, 3, {1}));
    LabeledSum b = siq(SiqSpec{make_module(FinAbGroup{{2, 2}},
                                           make_hom(FinAbGroup{{2, 2}}, FinAbGroup{{2, 2}},
                                                    {{1, 0}, {1, 1}})),
                               {FinAbGroup{{2, 2}}.index({1, 0})}});
    int si = 0;
    for (const Quandle& q : found)
      if (is_subdirectly_irreducible(q)) ++si;
    c.pass = found.size() == 2 && si == 2 &&
             same_up_to_iso(found, {a.quandle, b.quandle});
    c.detail = std::to_string(found.size()) + " found, " + std::to_string(si) +
               " subdirectly irreducible";
    claims.push_back(c);
  }

  {
    Claim c{"order 8: nine reductive-not-2-reductive, exactly two SI"};
    auto found = reductive_not_2reductive(8, cfg);
    int si = 0;
    for (const Quandle& q : found)
      if (is_subdirectly_irreducible(q)) ++si;
    c.pass = found.size() == 9 && si == 2;
    c.detail = std::to_string(found.size()) + " found, " + std::to_string(si) +
               " subdirectly irreducible";
    claims.push_back(c);
  }

  return claims;
}

int cmd_report(const Options& opt, const std::string& outdir) {
  std::vector<Claim> claims = run_claims(opt.cfg);
  json j{{"version", kVersion}, {"config_hash", config_hash(opt.cfg)}, {"claims", json::array()}};
  std::string text = std::string(kVersion) + "  config " + config_hash(opt.cfg) + "\n\n";
  bool all = true;
  for (const Claim& c : claims) {
    j["claims"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    char line[512];
    std::snprintf(line, sizeof line, "[%s] %s\n       %s\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.detail.c_str());
    text += line;
    all = all && c.pass;
  }
  std::filesystem::create_directories(outdir);
  write_file(outdir + "/claims.json", j.dump(2) + "\n");
  write_file(outdir + "/claims.txt", text);
  emit(opt, j, [&] { std::printf("%s", text.c_str()); });
  return all ? 0 : 1;
}

int cmd_gallery_export(const Options& opt, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  json index = json::array();
  for (const GalleryItem& it : gallery()) {
    std::string base = it.name;
    for (char& ch : base)
      if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
    write_file(outdir + "/" + base + ".quandle.json", quandle_to_json(it.quandle) + "\n");
    json entry{{"name", it.name}, {"quandle", base + ".quandle.json"}};
    if (it.mesh) {
      write_file(outdir + "/" + base + ".mesh.json", mesh_to_json(*it.mesh) + "\n");
      entry["mesh"] = base + ".mesh.json";
    }
    index.push_back(entry);
  }
  json j{{"version", kVersion}, {"items", index}};
  write_file(outdir + "/index.json", j.dump(2) + "\n");
  emit(opt, j, [&] {
    std::printf("exported %zu gallery items to %s/\n", index.size(), outdir.c_str());
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"finite medial quandle toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cap-lattice", opt.cfg.cap_lattice, "congruence lattice size cap");
  app.add_option("--cap-group", opt.cfg.cap_group, "permutation group closure cap");
  app.add_option("--jobs", opt.cfg.jobs, "worker threads (0 = library default)");
  app.add_option("--seed", opt.cfg.seed, "random seed recorded in reports");

  std::string file, file2, outdir = "qforge-out";
  i64 order = 0, arg_n = 0, arg_t = 0;
  std::vector<i64> arg_c;
  bool witness = false, allow_non_si = false;

  CLI::App* check = app.add_subcommand("check", "validate a quandle and print its invariants");
  check->add_option("file", file, "quandle file (.json or .csv)")->required();

  CLI::App* mesh = app.add_subcommand("mesh", "affine mesh operations");
  mesh->require_subcommand(1);
  CLI::App* mesh_validate = mesh->add_subcommand("validate", "check (M1)-(M4) and indecomposability");
  mesh_validate->add_option("file", file, "mesh file")->required();
  CLI::App* mesh_sum = mesh->add_subcommand("sum", "sum a mesh into a quandle");
  mesh_sum->add_option("file", file, "mesh file")->required();
  CLI::App* mesh_canonical = mesh->add_subcommand("canonical", "canonical mesh of a quandle");
  mesh_canonical->add_option("file", file, "quandle file")->required();

  CLI::App* congr = app.add_subcommand("congr", "congruence lattice operations");
  congr->require_subcommand(1);
  CLI::App* congr_list = congr->add_subcommand("list", "all congruences");
  congr_list->add_option("file", file, "quandle file")->required();
  CLI::App* congr_monolith = congr->add_subcommand("monolith", "least non-diagonal congruence, if any");
  congr_monolith->add_option("file", file, "quandle file")->required();
  CLI::App* congr_si = congr->add_subcommand("si", "subdirect irreducibility (exit 0 yes, 1 no)");
  congr_si->add_option("file", file, "quandle file")->required();

  CLI::App* make = app.add_subcommand("make", "build standard quandles");
  make->require_subcommand(1);
  CLI::App* make_proj = make->add_subcommand("projection", "projection quandle x*y = y");
  make_proj->add_option("n", arg_n, "size")->required()->check(CLI::PositiveNumber);
  CLI::App* make_alex = make->add_subcommand("alexander", "cyclic Alexander quandle (Z_n, t)");
  make_alex->add_option("n", arg_n, "modulus")->required()->check(CLI::PositiveNumber);
  make_alex->add_option("t", arg_t, "multiplier, coprime to n")->required();
  CLI::App* make_siq = make->add_subcommand("siq", "siq(Z_n, t, C) over a cyclic module");
  make_siq->add_option("n", arg_n, "modulus")->required()->check(CLI::PositiveNumber);
  make_siq->add_option("t", arg_t, "multiplier, coprime to n")->required();
  make_siq->add_option("c", arg_c, "coset representatives C")->required();
  make_siq->add_flag("--allow-non-si", allow_non_si, "skip the SI-module check");

  CLI::App* iso = app.add_subcommand("iso", "quandle isomorphism (exit 0 yes, 1 no)");
  iso->add_option("a", file, "first quandle file")->required();
  iso->add_option("b", file2, "second quandle file")->required();
  iso->add_flag("--witness", witness, "print the isomorphism when one exists");

  CLI::App* iso_mesh = app.add_subcommand("iso-mesh", "mesh homology (exit 0 yes, 1 no)");
  iso_mesh->add_option("a", file, "first mesh file")->required();
  iso_mesh->add_option("b", file2, "second mesh file")->required();

  CLI::App* enumerate = app.add_subcommand("enumerate", "SI medial quandles of one order");
  enumerate->add_option("--order", order, "quandle order")->required()->check(CLI::PositiveNumber);

  CLI::App* report = app.add_subcommand("report", "regenerate the desk-scale claim tables");
  report->add_option("--outdir", outdir, "output directory")->capture_default_str();

  CLI::App* gal = app.add_subcommand("gallery", "example corpus");
  gal->require_subcommand(1);
  CLI::App* gal_export = gal->add_subcommand("export", "write every gallery item to disk");
  gal_export->add_option("--outdir", outdir, "output directory")->capture_default_str();

  // Let global flags (--format, caps) appear after the subcommand too.
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    a->fallthrough(true);
    for (CLI::App* sub : a->get_subcommands({})) allow_fallthrough(sub);
  };
  for (CLI::App* sub : app.get_subcommands({})) allow_fallthrough(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    apply_env_caps(opt.cfg);

    if (*check) {
      Quandle q = load_quandle(file);
      json j = quandle_report(q, opt);
      emit(opt, j, [&] { print_quandle_report(j); });
      return j.at("medial").get<bool>() ? 0 : 1;
    }

    if (*mesh_validate) {
      AffineMesh m = validate_mesh(load_mesh(file));
      bool ind = is_indecomposable(m);
      json j{{"valid", true}, {"summands", m.summands()}, {"indecomposable", ind}};
      emit(opt, j, [&] {
        std::printf("valid mesh, %zu summands, %sindecomposable\n", m.summands(),
                    ind ? "" : "not ");
      });
      return 0;
    }
    if (*mesh_sum) {
      LabeledSum ls = sum_mesh(validate_mesh(load_mesh(file)));
      emit(opt, json::parse(quandle_to_json(ls.quandle)), [&] { print_table(ls.quandle); });
      return 0;
    }
    if (*mesh_canonical) {
      LabeledSum ls = canonical_mesh(load_quandle(file));
      emit(opt, json::parse(mesh_to_json(ls.mesh)), [&] {
        std::printf("%zu summands:", ls.mesh.summands());
        for (const FinAbGroup& g : ls.mesh.groups) std::printf(" %s", group_name(g).c_str());
        std::printf("\n%s\n", mesh_to_json(ls.mesh).c_str());
      });
      return 0;
    }

    if (*congr_list) {
      Quandle q = load_quandle(file);
      auto cs = all_congruences(q, opt.cfg.cap_lattice);
      json j = json::array();
      for (const Congruence& c : cs) j.push_back(json::parse(congruence_to_json(c)));
      emit(opt, json{{"count", cs.size()}, {"congruences", j}}, [&] {
        std::printf("%zu congruences\n", cs.size());
        for (const Congruence& c : cs) std::printf("  %s\n", blocks_str(c).c_str());
      });
      return 0;
    }
    if (*congr_monolith) {
      Quandle q = load_quandle(file);
      auto mono = monolith(q);
      if (!mono) {
        emit(opt, json{{"monolith", nullptr}}, [] { std::printf("none\n"); });
        return 1;
      }
      emit(opt, json{{"monolith", json::parse(congruence_to_json(*mono))}},
           [&] { std::printf("%s\n", blocks_str(*mono).c_str()); });
      return 0;
    }
    if (*congr_si) {
      bool si = is_subdirectly_irreducible(load_quandle(file));
      emit(opt, json{{"subdirectly_irreducible", si}},
           [&] { std::printf("%s\n", si ? "yes" : "no"); });
      return si ? 0 : 1;
    }

    if (*make_proj || *make_alex || *make_siq) {
      Quandle q = *make_proj ? projection_quandle(static_cast<int>(arg_n))
                 : *make_alex
                     ? alexander_cyclic(arg_n, arg_t)
                     : siq(siq_spec_cyclic(arg_n, arg_t, arg_c, allow_non_si)).quandle;
      emit(opt, json::parse(quandle_to_json(q)), [&] { print_table(q); });
      return 0;
    }

    if (*iso) {
      auto f = quandle_isomorphic(load_quandle(file), load_quandle(file2));
      json j{{"isomorphic", f.has_value()}};
      if (f && witness) j["witness"] = *f;
      emit(opt, j, [&] {
        std::printf("%s\n", f ? "isomorphic" : "not isomorphic");
        if (f && witness) {
          for (std::size_t x = 0; x < f->size(); ++x)
            std::printf("  %zu -> %d\n", x, (*f)[x]);
        }
      });
      return f ? 0 : 1;
    }
    if (*iso_mesh) {
      auto w = are_homologous(load_mesh(file), load_mesh(file2), opt.cfg.cap_aut);
      json j{{"homologous", w.has_value()}};
      if (w) j["sigma"] = w->sigma;
      emit(opt, j, [&] { std::printf("%s\n", w ? "homologous" : "not homologous"); });
      return w ? 0 : 1;
    }

    if (*enumerate) {
      EnumerationReport rep = enumerate_si(order, opt.cfg);
      i64 latin = 0, reductive = 0, other = 0;
      json reps = json::array();
      for (const SiRepresentative& r : rep.reps) {
        if (r.latin)
          ++latin;
        else if (r.reductivity)
          ++reductive;
        else
          ++other;  // quasi-reductive non-reductive: empty in the finite case
        json e{{"provenance", r.provenance},
               {"latin", r.latin},
               {"orbit_sizes", r.fp.orbit_sizes},
               {"quandle", json::parse(quandle_to_json(r.quandle))}};
        if (r.reductivity) e["reductivity"] = *r.reductivity;
        reps.push_back(e);
      }
      json j{{"version", kVersion},
             {"config_hash", config_hash(opt.cfg)},
             {"order", rep.order},
             {"complete", rep.complete},
             {"count", rep.reps.size()},
             {"counts_by_class",
              {{"latin", latin}, {"reductive", reductive}, {"quasi_reductive_non_reductive", other}}},
             {"representatives", reps}};
      emit(opt, j, [&] {
        std::printf("order %lld: %zu subdirectly irreducible medial quandle%s%s\n", rep.order,
                    rep.reps.size(), rep.reps.size() == 1 ? "" : "s",
                    rep.complete ? "" : " (truncated by budget)");
        std::printf("  latin %lld, reductive %lld, quasi-reductive non-reductive %lld\n", latin,
                    reductive, other);
        for (const SiRepresentative& r : rep.reps)
          std::printf("  %-32s latin=%d reductivity=%s\n", r.provenance.c_str(), r.latin,
                      r.reductivity ? std::to_string(*r.reductivity).c_str() : "none");
      });
      return 0;
    }

    if (*report) return cmd_report(opt, outdir);
    if (*gal_export) return cmd_gallery_export(opt, outdir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
