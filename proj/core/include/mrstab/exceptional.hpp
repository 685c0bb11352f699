// Quasi-reductivity and maximal reductive stabiliser types for standard
// parabolic subalgebras p_pi of the exceptional simple Lie algebras, and the
// generic recursion they rest on:
//
//   * a curated table of the connected quasi-reductive patterns containing
//     the distinguished simple root (the one not orthogonal to the highest
//     root), together with index, stabiliser type and embedding note;
//   * exclusion lists of the patterns that are not quasi-reductive;
//   * the highest-root reduction p -> p intersect g~ (g~ the semisimple
//     subalgebra generated by the simple roots orthogonal to the highest
//     root), which lowers E8 to E7, E7 to D6, E6 to A5, F4 to C3, G2 to A1;
//   * additivity over diagram components when rank(g) equals the cascade
//     size (E7, E8, F4, G2 -- not E6).
//
// The same recursion runs on classical types (type A answered by the meander
// module with the trace-zero convention, types B/C/D by the classical
// module), which is used to cross-check the reduction step.
#pragma once

#include "mrstab/classical.hpp"
#include "mrstab/meander.hpp"
#include "mrstab/rootsys.hpp"

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrstab::exceptional {

using classical::NormalizedType;
using classical::NotQuasiReductive;
using roots::SimpleType;

// Requested pattern is quasi-reductive but absent from the curated table.
struct NotInTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The dispatch reaches a configuration the classification does not spell
// out (conceivable only for disconnected E6 patterns outside the table).
struct NotCovered : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableRow {
  SimpleType type;                // ambient exceptional algebra
  int row = 0;                    // line number within that algebra's table
  std::vector<int> pi;            // sorted 1-based simple-root indices
  int index = 0;                  // index of p_pi
  NormalizedType mrs;             // parsed from mrs_label
  std::string mrs_label;          // e.g. "B3 + C", "2A1 + C", "D3", "0"
  std::string embedding_note;     // verbatim "Embedding" column text
};

struct ExclusionRule {
  SimpleType type;
  // p_pi is not quasi-reductive iff some connected component of pi equals
  // one of these sets ...
  std::vector<std::vector<int>> forbidden_components;
  // ... or (E6 only) pi itself, normalized by the diagram automorphism,
  // equals one of these sets.
  std::vector<std::vector<int>> forbidden_pi_up_to_automorphism;
};

// Parses a stabiliser-type label: terms joined by '+', each term an optional
// multiplicity followed by a family letter and rank ("2A1", "B3", "G2") or a
// central torus ("C", "2C", "C^2"); "0" is the zero algebra. Small-rank
// identifications (C2 = B2, D3 = A3, ...) are applied.
NormalizedType parse_type_label(const std::string& label);

// The 21 curated rows (8 for E6, 6 for E7, 5 for E8, 2 for F4; G2 has none).
// Validated on first use: every row has index = rank(mrs), a sorted pattern
// containing the distinguished root, and (E6) a pattern already in normal
// form under the diagram automorphism.
const std::vector<TableRow>& exceptional_table();

// Exclusion rules for all five exceptional types.
const std::vector<ExclusionRule>& exclusion_rules();

// The table in its data-file format; data/exceptional_tables.txt holds the
// same text, and a unit test keeps the two in sync.
const std::string& table_data_text();

// Parses rows in the data-file format, one per line:
//   type; pi as sorted index list; index; mrs type string; embedding note
// '#' starts a comment, blank lines are skipped. Row numbers are assigned
// per type in file order.
std::vector<TableRow> parse_table(std::istream& in);

// Whether p_pi is quasi-reductive: false iff a connected component of pi
// matches an exclusion entry, the normalized pi matches a forbidden full
// pattern (E6), or a component avoiding the distinguished root reduces to a
// non-quasi-reductive orthogonal parabolic.
bool is_qr_exceptional(const SimpleType& type, const std::set<int>& pi);

// The table row whose pattern equals pi (normalized first for E6).
// Throws NotInTable if absent.
const TableRow& table_lookup(const SimpleType& type, const std::set<int>& pi);

struct MrsResult {
  NormalizedType mrs;
  int index = 0;                         // = mrs.rank()
  std::string route;                     // dispatch trace, human-readable
  std::vector<std::string> embedding_notes;  // table notes encountered
};

// M_*(p_pi) for an exceptional type. Dispatch: pi = Pi -> the algebra
// itself; distinguished root absent -> highest-root reduction; present and
// pi connected -> table lookup; present and pi disconnected -> additivity
// over components (E7/E8/F4/G2) or whole-pattern lookup (E6, NotCovered
// when the pattern is not listed). Throws NotQuasiReductive first whenever
// the pattern fails is_qr_exceptional.
MrsResult mrs_exceptional(const SimpleType& type, const std::set<int>& pi);

// rank(M_*(p_pi)), which equals the index of p_pi.
int index_exceptional(const SimpleType& type, const std::set<int>& pi);

// ---- the generic recursion, also available for classical types ----

// The isotropic-flag parabolic of so/sp matching the standard parabolic
// p_pi: flag dimensions are the omitted node indices, with the D-type fork
// read as follows -- one omitted fork node contributes a maximal isotropic
// subspace (dimension ell), both omitted fork nodes contribute dimension
// ell-1. Requires family B, C or D and pi a proper subset.
classical::IsoParabolic parabolic_from_subset(const SimpleType& type,
                                              const std::set<int>& pi);

// The composition a with q(a|(n)) the seaweed matching the standard
// parabolic p_pi of sl_n (type A, n = rank + 1): parts are the gaps of the
// omitted node indices inside [0, n].
meander::Composition seaweed_composition_a(const SimpleType& type,
                                           const std::set<int>& pi);

// Quasi-reductivity of the standard parabolic p_pi of any simple type.
// Types A and C are always quasi-reductive.
bool is_qr_parabolic(const SimpleType& type, const std::set<int>& pi);

// M_*(p_pi) for any simple type: type A via the meander stabiliser of
// q(a|(n)) intersected with sl_n (one central torus dimension dropped),
// B/C/D via the classical formulas, exceptional types via the table
// machinery.
NormalizedType mrs_parabolic(const SimpleType& type, const std::set<int>& pi);

// One highest-root reduction step: for pi avoiding the distinguished root,
// M_*(p_pi) is the direct sum of the answers for pi's intersections with the
// diagram components of the orthogonal simple roots. Works for every simple
// type that has a unique simple root attached to the highest root (all but
// type A).
NormalizedType mrs_via_highest_root_reduction(const SimpleType& type,
                                              const std::set<int>& pi);

}  // namespace mrstab::exceptional
