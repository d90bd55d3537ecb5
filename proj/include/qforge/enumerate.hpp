#pragma once

#include <string>

#include "qforge/construct.hpp"
#include "qforge/iso.hpp"

namespace qf {

struct RunConfig {
  i64 cap_subgroup = 10000;
  i64 cap_group = 100000;
  i64 cap_lattice = 100000;
  i64 cap_aut = 256;
  int jobs = 0;  // 0 = library default
  unsigned seed = 1;
};

struct SiRepresentative {
  Quandle quandle;
  std::string provenance;  // "alexander(...)" or "siq(...)"
  InvariantFingerprint fp;
  bool latin = false;
  std::optional<int> reductivity;
};

struct EnumerationReport {
  i64 order = 0;
  std::vector<SiRepresentative> reps;  // pairwise non-isomorphic, all SI
  bool complete = true;                // false if a budget truncated the scan
};

/// Every SI LaurentModule on an abelian carrier of order n (one per
/// (carrier, automorphism) pair; no module-level dedup).
std::vector<LaurentModule> si_modules_of_order(i64 n, const RunConfig& cfg = {});

/// All SI medial quandles of order n up to isomorphism: connected ones from
/// Alexander pairs, non-connected ones from siq over SI modules.
EnumerationReport enumerate_si(i64 n, const RunConfig& cfg = {});

/// All medial quandles of order n (up to isomorphism) that are reductive but
/// not 2-reductive, by exhaustive mesh enumeration.  Feasible for n <= 8.
std::vector<Quandle> reductive_not_2reductive(i64 n, const RunConfig& cfg = {});

/// Strictly 2-reductive SI medial quandles of order n up to isomorphism, by
/// exhaustive enumeration of all-phi-zero meshes (reduced to the
/// one-nontrivial-orbit shapes; see docs).
std::vector<Quandle> two_reductive_si(i64 n, const RunConfig& cfg = {});

/// Involutory SI medial quandles of order n up to isomorphism.
std::vector<Quandle> involutory_si(i64 n, const RunConfig& cfg = {});

enum class SiClass { Latin, Reductive, TwoElementProjection, NotSi };

struct Classification {
  SiClass label;
  std::string evidence;
};

Classification classify(const Quandle& q, const RunConfig& cfg = {});

}  // namespace qf
