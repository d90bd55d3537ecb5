#include "qforge/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qf {

using nlohmann::json;

namespace {

json group_j(const FinAbGroup& g) { return json{{"orders", g.orders}}; }

FinAbGroup group_p(const json& j) {
  return FinAbGroup{j.at("orders").get<std::vector<i64>>()};
}

json hom_j(const GroupHom& h) {
  return json{{"source", group_j(h.source)}, {"target", group_j(h.target)},
              {"matrix", h.matrix}};
}

GroupHom hom_p(const json& j) {
  return make_hom(group_p(j.at("source")), group_p(j.at("target")),
                  j.at("matrix").get<std::vector<std::vector<i64>>>());
}

json quandle_j(const Quandle& q) {
  std::vector<std::vector<int>> table(q.n);
  for (int a = 0; a < q.n; ++a)
    table[a].assign(q.mult_.begin() + a * q.n, q.mult_.begin() + (a + 1) * q.n);
  return json{{"size", q.n}, {"table", table}};
}

}  // namespace

std::string group_to_json(const FinAbGroup& g) { return group_j(g).dump(); }
FinAbGroup group_from_json(const std::string& text) { return group_p(json::parse(text)); }

std::string elem_to_json(const GroupElem& e) { return json(e.coords).dump(); }

std::string hom_to_json(const GroupHom& h) { return hom_j(h).dump(); }
GroupHom hom_from_json(const std::string& text) { return hom_p(json::parse(text)); }

std::string quandle_to_json(const Quandle& q) { return quandle_j(q).dump(); }

Quandle quandle_from_json(const std::string& text) {
  json j = json::parse(text);
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  Quandle q = validate_quandle(table);
  if (j.contains("size") && j.at("size").get<int>() != q.n)
    throw DomainError("quandle json: size field disagrees with table");
  return q;
}

Quandle quandle_from_csv(const std::string& text) {
  std::vector<std::vector<int>> table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stoi(cell));
    table.push_back(std::move(row));
  }
  return validate_quandle(table);
}

std::string mesh_to_json(const AffineMesh& m) {
  json groups = json::array(), phi = json::array(), c = json::array();
  for (const auto& g : m.groups) groups.push_back(group_j(g));
  for (std::size_t i = 0; i < m.summands(); ++i) {
    json prow = json::array(), crow = json::array();
    for (std::size_t j = 0; j < m.summands(); ++j) {
      prow.push_back(json{{"matrix", m.phis[i][j].matrix}});
      crow.push_back(m.groups[j].coords(m.consts[i][j]));
    }
    phi.push_back(std::move(prow));
    c.push_back(std::move(crow));
  }
  return json{{"groups", groups}, {"phi", phi}, {"c", c}}.dump();
}

AffineMesh mesh_from_json(const std::string& text) {
  json j = json::parse(text);
  AffineMesh m;
  for (const auto& g : j.at("groups")) m.groups.push_back(group_p(g));
  std::size_t k = m.groups.size();
  m.phis.resize(k);
  m.consts.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t jj = 0; jj < k; ++jj) {
      m.phis[i].push_back(make_hom(m.groups[i], m.groups[jj],
                                   j.at("phi").at(i).at(jj).at("matrix")
                                       .get<std::vector<std::vector<i64>>>()));
      m.consts[i].push_back(m.groups[jj].index(j.at("c").at(i).at(jj).get<Coords>()));
    }
  }
  return validate_mesh(std::move(m));
}

std::string congruence_to_json(const Congruence& c) {
  return json{{"blocks", c.blocks()}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write file: " + path);
  out << content;
}

}  // namespace qf
