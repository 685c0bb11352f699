// Meander graphs of seaweed subalgebras of gl_n.
//
// A seaweed in gl_n is specified by two compositions of n. Its meander graph
// has vertices 1..n and, for each block [s+1, s+p] of either composition, the
// arc edges (s+1, s+p), (s+2, s+p-1), ...; an odd block leaves its middle
// vertex unmatched. Components of the resulting graph are cycles and
// segments; their nesting structure determines the index of the seaweed and
// its maximal reductive stabiliser, one GL_r factor per maximal component.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mrstab::meander {

struct Composition {
  std::vector<int> parts;

  int total() const;
  bool empty() const { return parts.empty(); }
  // Throws std::invalid_argument unless all parts are >= 1 and there is at
  // least one part.
  void validate() const;
  std::string to_string() const;  // comma separated, e.g. "9,3,4"
  bool operator==(const Composition&) const = default;
};

struct Component {
  enum class Kind { Cycle, Segment };
  Kind kind = Kind::Segment;
  std::vector<int> vertices;  // sorted descending
  int dimension = 1;          // cycles: nesting formula; segments: 1
  bool maximal = false;

  int top() const { return vertices.front(); }  // largest vertex
  bool is_cycle() const { return kind == Kind::Cycle; }
};

struct MeanderGraph {
  int n = 0;
  std::vector<std::pair<int, int>> a_edges;  // (lo, hi) pairs
  std::vector<std::pair<int, int>> b_edges;
  std::vector<Component> components;  // ordered by smallest vertex
};

// Builds the meander graph of the seaweed q(a|b). Throws
// std::invalid_argument if the totals differ or a composition is invalid.
MeanderGraph build_meander(const Composition& a, const Composition& b);

// Whether component x lies inside cycle y: with the vertices of y sorted
// descending y1 > y2 > ..., x is inside iff y_{2i} < x1 < y_{2i-1} for some
// i, where x1 is the largest vertex of x. A segment y contains nothing.
bool is_inside(const Component& x, const Component& y);

// Components of g that do not lie inside any cycle. Maximal segments count
// as maximal cycles of dimension 1.
std::vector<Component> maximal_components(const MeanderGraph& g);

// Dimension of a cycle: 2#(cycles inside) + #(segments inside) + 2, checked
// against the closed form y1 - y2 + 1. Returns 1 for a segment.
int cycle_dimension(const MeanderGraph& g, const Component& y);

// Index of the seaweed q(a|b), computed as the sum of the dimensions of the
// maximal components and cross-checked against 2#cycles + #segments over all
// components; throws std::logic_error if the two formulas disagree.
int seaweed_index(const Composition& a, const Composition& b);

// One factor of the maximal reductive stabiliser of a seaweed in gl_n.
struct GlMrsFactor {
  int rank = 1;  // r: the factor is a copy of GL_r
  // For r > 1: the t/2 vertex intervals [lo, hi], each of length r, across
  // which the same r x r block is repeated diagonally.
  std::vector<std::pair<int, int>> intervals;
  // For r == 1: the vertices carrying the same scalar.
  std::vector<int> scalar_positions;
};

struct GlMrsDescriptor {
  std::vector<GlMrsFactor> factors;  // ordered by smallest covered vertex
  // Set when the seaweed is read inside sl_n rather than gl_n, in which case
  // one central GL_1 factor is absorbed into the remaining ones.
  bool sl_convention = false;
};

// Maximal reductive stabiliser of q(a|b): one GL factor per maximal
// component, with its embedding data.
GlMrsDescriptor mrs_gl(const Composition& a, const Composition& b);

// One reduction move on a composition pair. The pair is first exchanged if
// necessary so that a1 <= b1; then a1 = b1 splits off a gl_{a1} summand,
// 2a1 <= b1 shrinks to (a2.. | b1-2a1, a1, b2..) with a zero part dropped,
// and 2a1 > b1 folds to (2a1-b1, a2.. | a1, b2..).
struct ReduceStep {
  enum class Move { Split, Shrink, Fold };
  Move move = Move::Split;
  bool swapped = false;  // compositions exchanged before applying the rule
  int split_rank = 0;    // for Split: the size of the stripped gl summand
  Composition a, b;      // the reduced pair; empty after a terminal split
};

ReduceStep reduce_step(const Composition& a, const Composition& b);

// Computes the stabiliser factors by iterating reduce_step until nothing is
// left, collecting one GL_{a1} factor per split. The result carries ranks
// only (no embedding data) and is used to cross-validate mrs_gl.
GlMrsDescriptor mrs_gl_via_reduction(const Composition& a, const Composition& b);

}  // namespace mrstab::meander
