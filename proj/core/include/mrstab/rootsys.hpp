// Finite root systems of the classical and exceptional families, with roots
// written as integer coefficient vectors over a fixed simple-root basis.
//
// Simple roots are numbered in the Vinberg-Onishchik convention: for the
// classical families it coincides with the Bourbaki numbering, while for the
// exceptional types the diagram is a chain with one branch node,
//
//   E6: chain a1..a5, branch a6 attached at a3,
//   E7: chain a1..a6, branch a7 attached at a4,
//   E8: chain a1..a7, branch a8 attached at a5,
//   F4: a1 - a2 => a3 - a4 with a1, a2 short,
//   G2: a1 => a2 with a1 short (triple edge).
//
// Subsets of simple roots are 1-based index sets throughout.
#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrstab::roots {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct SimpleType {
  Family family;
  int rank;

  // Enforces the rank bounds under which the label is the canonical name of
  // the type: A>=1, B>=2, C>=3, D>=4, E in {6,7,8}, F=4, G=2.
  void validate() const;
  auto operator<=>(const SimpleType&) const = default;
  std::string to_string() const;
};

using RootVector = std::vector<int>;  // coefficients over the simple roots

class RootSystem {
 public:
  explicit RootSystem(SimpleType type);

  SimpleType type() const { return type_; }
  int rank() const { return type_.rank; }
  const std::vector<RootVector>& positive_roots() const { return positive_; }

  // Symmetrized inner product of two coefficient vectors (integer valued).
  long pairing(const RootVector& u, const RootVector& v) const;
  long gram(int i, int j) const { return gram_[i - 1][j - 1]; }  // 1-based

  bool is_root(const RootVector& v) const;
  static std::set<int> support(const RootVector& v);
  int height(const RootVector& v) const;

  // The highest root of the subsystem generated by a connected subset pi.
  RootVector highest_root(const std::set<int>& pi) const;
  RootVector highest_root() const;  // of the full system

  bool is_orthogonal(const RootVector& u, const RootVector& v) const;
  // Orthogonal and neither the sum nor the difference is a root.
  bool is_strongly_orthogonal(const RootVector& u, const RootVector& v) const;

  // Connected components of a subset of simple roots (adjacency = not
  // orthogonal), each returned as a sorted index set, ordered by minimum.
  std::vector<std::set<int>> connected_components(const std::set<int>& pi) const;

  std::set<int> full_subset() const;

 private:
  SimpleType type_;
  std::vector<std::vector<long>> gram_;
  std::vector<RootVector> positive_;
  std::set<RootVector> all_roots_;
};

// A connected subset identified as an abstract Dynkin diagram, with its nodes
// listed in the canonical numbering of that diagram type. Two-node double
// bonds are reported as B2 (long node first).
struct ClassifiedSubdiagram {
  SimpleType type;
  std::vector<int> order;  // original 1-based indices in canonical order
};
ClassifiedSubdiagram classify_connected_subset(const RootSystem& rs, const std::set<int>& subset);

// Data of the reduction that removes the unique simple root not orthogonal
// to the highest root. Defined whenever that root is unique (all types
// except A_l with l >= 2).
struct ThetaReduction {
  int alpha_tilde = 0;              // 1-based index of the removed simple root
  std::set<int> pi_tilde;           // remaining simple roots
  // Type of the subsystem generated by pi_tilde when it is connected.
  std::optional<ClassifiedSubdiagram> reduced;
};
ThetaReduction theta_tilde(const RootSystem& rs);

// Lexicographically smallest image of pi under the diagram automorphism
// group (A: reversal; D: fork swap, with the full S3 for D4; E6: the order
// two symmetry; trivial otherwise).
std::set<int> normalize_by_diagram_automorphism(const RootSystem& rs, const std::set<int>& pi);

// All images of pi under the diagram automorphism group.
std::vector<std::set<int>> diagram_automorphism_orbit(const RootSystem& rs, const std::set<int>& pi);

}  // namespace mrstab::roots
