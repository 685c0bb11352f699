// Command-line front end: problem parsing, dispatch to the formula modules,
// oracle-backed verification, sweeps, and text/JSON/DOT reports.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "mrstab/meander.hpp"
#include "mrstab/rootsys.hpp"

namespace mrstab::cli {

enum class Kind { SeaweedGl, ParabolicSp, ParabolicSo, ParabolicExceptional };

struct Problem {
  Kind kind = Kind::SeaweedGl;
  meander::Composition a, b;                     // seaweed-gl
  int n = 0;                                     // parabolic-sp / parabolic-so
  meander::Composition comp;                     // parabolic-sp / parabolic-so
  roots::SimpleType type{roots::Family::A, 1};   // parabolic-exceptional
  std::set<int> pi;                              // parabolic-exceptional
};

struct Options {
  std::string format = "text";        // text | json | dot
  std::uint64_t seed = 0;
  std::string verify_level = "full";  // off | fast | full
  int max_n = 4;
};

// Canonical one-line case key, e.g. "seaweed-gl 9,3,4/4,1,11",
// "parabolic-so n=9 a=2,1", "parabolic-exceptional type=E6 pi=1,3".
// Keys round-trip through parse_case_key.
std::string case_key(const Problem& p);
Problem parse_case_key(const std::string& key);

// Parses a kind token plus parameter tokens (the command line form).
// Throws std::invalid_argument with a positional diagnostic on bad input.
Problem parse_problem(const std::string& kind_token,
                      const std::vector<std::string>& params);

// Runs the full command line (without the program name). Writes reports to
// `out` and diagnostics to `err`. Exit codes: 0 pass, 1 fail, 2 not
// quasi-reductive, 3 not covered by the tables, 64 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrstab::cli
