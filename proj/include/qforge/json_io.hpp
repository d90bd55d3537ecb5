#pragma once

#include <string>

#include "qforge/congruence.hpp"

namespace qf {

// JSON encodings are documented in docs/formats.md.

std::string group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const std::string& text);

std::string elem_to_json(const GroupElem& e);

std::string hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const std::string& text);

std::string quandle_to_json(const Quandle& q);
Quandle quandle_from_json(const std::string& text);
Quandle quandle_from_csv(const std::string& text);

std::string mesh_to_json(const AffineMesh& m);
AffineMesh mesh_from_json(const std::string& text);

std::string congruence_to_json(const Congruence& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qf
