#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrstab/linalg.hpp"

using namespace mrstab::linalg;
using mrstab::Rat;

namespace {

RatMatrix mat2(long a, long b, long c, long d) {
  RatMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("matrix arithmetic and trace") {
  const RatMatrix x = mat2(1, 2, 3, 4), y = mat2(0, 1, -1, 0);
  CHECK((x + y) == mat2(1, 3, 2, 4));
  CHECK((x - y) == mat2(1, 1, 4, 4));
  CHECK((x * y) == mat2(-2, 1, -4, 3));
  CHECK((x * Rat(3)) == mat2(3, 6, 9, 12));
  CHECK(x.transpose() == mat2(1, 3, 2, 4));
  CHECK(x.trace() == 5);
  CHECK(trace_product(x, y) == (x * y).trace());
  CHECK(RatMatrix::identity(2) == mat2(1, 0, 0, 1));
  CHECK(RatMatrix::unflatten(2, 2, x.flatten()) == x);
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  const RatMatrix x = mat2(1, 2, 0, -1), y = mat2(2, 0, 1, 1), z = mat2(0, 3, 1, 0);
  CHECK(bracket(x, y) == (bracket(y, x) * Rat(-1)));
  const RatMatrix jac =
      bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
  CHECK(jac.is_zero());
}

TEST_CASE("rank and kernel") {
  RatMatrix m(3, 3);
  // rows: (1,2,3), (2,4,6), (0,1,1) -> rank 2
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 3;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  m.at(1, 2) = 6;
  m.at(2, 1) = 1;
  m.at(2, 2) = 1;
  CHECK(rank_of(m) == 2);
  const Subspace k = kernel_of(m);
  CHECK(k.dim() == 1);
  // kernel vector (1, 1, -1) up to scale
  CHECK(k.contains({Rat(1), Rat(1), Rat(-1)}));
  CHECK_FALSE(k.contains({Rat(1), Rat(0), Rat(0)}));
  CHECK(rank_of(RatMatrix(3, 3)) == 0);
  CHECK(kernel_of(RatMatrix(3, 3)).dim() == 3);
}

TEST_CASE("subspace operations") {
  const std::size_t n = 4;
  const Subspace a = Subspace::span(
      n, {{Rat(1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0), Rat(0)}});
  const Subspace b = Subspace::span(
      n, {{Rat(0), Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1), Rat(0)}});
  CHECK(a.dim() == 2);
  CHECK(sum(a, b).dim() == 3);
  const Subspace meet = intersect(a, b);
  CHECK(meet.dim() == 1);
  CHECK(meet.contains({Rat(0), Rat(1), Rat(0), Rat(0)}));
  const Subspace perp = orthogonal_complement(a);
  CHECK(perp.dim() == 2);
  CHECK(perp.contains({Rat(0), Rat(0), Rat(1), Rat(0)}));
  CHECK(perp.contains({Rat(0), Rat(0), Rat(0), Rat(1)}));
  // echelon canonical form makes equality representation-independent
  const Subspace a2 = Subspace::span(
      n, {{Rat(1), Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(-1), Rat(0), Rat(0)}});
  CHECK(a == a2);
  CHECK(a.contains(a2));
}

TEST_CASE("coordinates against the echelon basis") {
  const Subspace s = Subspace::span(3, {{Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
  const RatVector v{Rat(2), Rat(4), Rat(5)};
  const auto c = s.coordinates(v);
  REQUIRE(c.has_value());
  // reconstruct from the echelon basis
  RatVector rec(3, Rat(0));
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < 3; ++j) rec[j] += (*c)[i] * s.basis()[i][j];
  CHECK(rec == v);
  CHECK_FALSE(s.coordinates({Rat(0), Rat(1), Rat(0)}).has_value());
}

TEST_CASE("projection against a subspace with a bilinear form") {
  // Euclidean projection in Q^2: project (3,1) against span{(1,1)}.
  const auto dot = [](const RatVector& u, const RatVector& v) {
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  const RatVector r = project_against({Rat(3), Rat(1)}, {{Rat(1), Rat(1)}}, dot);
  CHECK(r == RatVector{Rat(1), Rat(-1)});
  CHECK(dot(r, {Rat(1), Rat(1)}) == 0);
  // degenerate Gram: the form vanishes identically on the spanning vector
  const auto null_form = [](const RatVector&, const RatVector&) { return Rat(0); };
  CHECK_THROWS_AS(project_against({Rat(1), Rat(0)}, {{Rat(1), Rat(1)}}, null_form),
                  DegenerateGram);
}

TEST_CASE("rref reports pivot columns") {
  std::vector<RatVector> rows{{Rat(0), Rat(2), Rat(4)}, {Rat(0), Rat(1), Rat(2)}};
  const auto pivots = rref(rows);
  REQUIRE(pivots.size() == 1);
  CHECK(pivots[0] == 1);
  CHECK(rows[0] == RatVector{Rat(0), Rat(1), Rat(2)});
}
