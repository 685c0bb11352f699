// Kostant's cascade of strongly orthogonal roots.
//
// The cascade of a subset pi of simple roots is built by induction: the
// cascade of the empty set is empty, a disconnected subset cascades
// componentwise, and for a connected subset the cascade consists of pi itself
// together with the cascade of the set T of simple roots of pi orthogonal to
// the highest root of pi. The highest roots of the members form a system of
// pairwise strongly orthogonal positive roots.
#pragma once

#include "mrstab/rootsys.hpp"

namespace mrstab::cascade {

using roots::RootSystem;
using roots::RootVector;
using roots::SimpleType;

struct Cascade {
  // Connected subsets K of the simple roots, in recursion order (outermost
  // first within each component), and their highest roots in the same order.
  std::vector<std::set<int>> members;
  std::vector<RootVector> roots;

  std::size_t size() const { return members.size(); }
};

Cascade kostant_cascade(const RootSystem& rs, const std::set<int>& pi);
Cascade kostant_cascade(const RootSystem& rs);  // of the full diagram

// Closed-form size of the cascade of the full diagram of the given type.
int cascade_size(SimpleType type);

// Cascade roots of the full system that lie outside the subsystem generated
// by pi. These are the weights of the one-dimensional summands spanning the
// canonical complement below the standard parabolic attached to pi.
std::vector<RootVector> u_minus_support(const RootSystem& rs, const std::set<int>& pi);

}  // namespace mrstab::cascade
