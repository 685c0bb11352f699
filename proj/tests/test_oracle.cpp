#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "mrstab/oracle.hpp"

using namespace mrstab::oracle;
using mrstab::classical::IsoParabolic;
using mrstab::classical::NormalizedType;
using mrstab::Rat;
using mrstab::linalg::RatMatrix;
using mrstab::linalg::RatVector;
using mrstab::linalg::bracket;
using mrstab::linalg::trace_product;
using mrstab::meander::Composition;
using mrstab::realize::MatrixLieAlgebra;
using mrstab::realize::build_gl;
using mrstab::realize::build_iso_algebra;
using mrstab::realize::build_parabolic_iso;
using mrstab::realize::build_seaweed_gl;
using mrstab::realize::elementary;
using mrstab::realize::embed_mrs_gl;
using mrstab::realize::in_span;
using mrstab::realize::make_algebra;
using mrstab::roots::Family;
using mrstab::roots::SimpleType;

namespace {

RatMatrix diag(std::vector<long> d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = Rat(d[i]);
  return m;
}

RatMatrix identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

}  // namespace

TEST_CASE("minimal polynomials (monic, little-endian coefficients)") {
  CHECK(minimal_polynomial(diag({1, 1, 2})) == std::vector<Rat>{Rat(2), Rat(-3), Rat(1)});
  CHECK(minimal_polynomial(elementary(2, 1, 2)) ==
        std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
  CHECK(minimal_polynomial(RatMatrix(3, 3)) == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(minimal_polynomial(identity(4)) == std::vector<Rat>{Rat(-1), Rat(1)});
}

TEST_CASE("semisimplicity certificates") {
  CHECK(is_semisimple_matrix(diag({1, 1, 2})));
  CHECK(is_semisimple_matrix(RatMatrix(2, 2)));
  CHECK_FALSE(is_semisimple_matrix(elementary(3, 1, 2)));
  // rotation matrix: irrational (complex) eigenvalues but squarefree minimal
  // polynomial x^2 + 1, hence semisimple
  RatMatrix rot(2, 2);
  rot.at(0, 1) = Rat(1);
  rot.at(1, 0) = Rat(-1);
  CHECK(is_semisimple_matrix(rot));
  // Jordan block shifted by identity
  RatMatrix jb = identity(2);
  jb.at(0, 1) = Rat(1);
  CHECK_FALSE(is_semisimple_matrix(jb));
}

TEST_CASE("sampler determinism") {
  const Sampler s{42};
  CHECK(s.derive("case-a").seed == Sampler{42}.derive("case-a").seed);
  CHECK(s.derive("case-a").seed != s.derive("case-b").seed);
  CHECK(s.derive("case-a").seed != Sampler{43}.derive("case-a").seed);
  auto e1 = s.engine("op");
  auto e2 = s.engine("op");
  auto e3 = s.engine("other-op");
  CHECK(e1() == e2());
  CHECK(e1() == e2());
  // engines for different operations decouple
  auto e4 = s.engine("op");
  CHECK(e4() != e3());
}

TEST_CASE("numeric index of familiar algebras") {
  const Sampler s{7};
  for (int n = 1; n <= 4; ++n)
    CHECK(index_numeric(build_gl(n), s.derive("gl" + std::to_string(n))) == n);
  CHECK(index_numeric(build_seaweed_gl(Composition{{1, 1, 1}}, Composition{{3}}),
                      s.derive("borel3")) == 2);
  CHECK(index_numeric(build_seaweed_gl(Composition{{2, 2}}, Composition{{4}}),
                      s.derive("q22")) == 2);
  // determinism: same sampler, same answer
  CHECK(index_numeric(build_gl(3), s.derive("again")) ==
        index_numeric(build_gl(3), s.derive("again")));
}

TEST_CASE("canonical representative of a linear form") {
  const MatrixLieAlgebra q = build_seaweed_gl(Composition{{2, 1}}, Composition{{3}});
  RatMatrix y(3, 3);
  y.at(0, 1) = Rat(1);
  y.at(1, 0) = Rat(2);
  y.at(2, 2) = Rat(-3);
  const LinearForm xi = LinearForm::canonical(q, y);
  // same values on the algebra
  for (const RatMatrix& b : q.basis) CHECK(xi.value(b) == trace_product(b, y));
  // representative lies in the span of the transposed basis
  std::vector<RatMatrix> qt;
  for (const RatMatrix& b : q.basis) qt.push_back(b.transpose());
  CHECK(in_span(qt, xi.rep));
  // canonicalising twice is a projection
  const LinearForm xi2 = LinearForm::canonical(q, xi.rep);
  CHECK(xi2.rep == xi.rep);
}

TEST_CASE("contraction form and stabiliser invariants") {
  const MatrixLieAlgebra q = build_seaweed_gl(Composition{{2, 2}}, Composition{{4}});
  RatMatrix y(4, 4);
  int v = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) y.at(i, j) = Rat((v = (v * 17 + 3) % 19) - 9);
  const LinearForm xi = LinearForm::canonical(q, y);
  const RatMatrix c = contraction_form(q, xi);
  CHECK(c.rows() == 12);
  // antisymmetry
  CHECK((c + c.transpose()).is_zero());
  const MatrixLieAlgebra stab = stabiliser_of(q, xi);
  // skew forms have even rank: stabiliser dimension matches dim q parity
  CHECK((q.dim() - stab.dim()) % 2 == 0);
  // the centre (scalars) always stabilises
  CHECK(in_span(stab.basis, identity(4)));
  CHECK(stab.dim() >= 2);  // at least the index
  // the form vanishes on brackets with stabiliser elements
  for (const RatMatrix& m : stab.basis)
    for (const RatMatrix& b : q.basis) CHECK(xi.value(bracket(b, m)) == Rat(0));
}

TEST_CASE("generic torus on quasi-reductive and non-quasi-reductive parabolics") {
  const IsoParabolic good{+1, 9, Composition{{2}}};
  const GenericTorusResult gt = generic_torus(build_parabolic_iso(good), Sampler{11});
  REQUIRE(gt.ok);
  CHECK(gt.torus.dim() == mrstab::classical::mrs_so(good).rank());  // = 3
  for (const RatMatrix& t : gt.torus.basis) CHECK(is_semisimple_matrix(t));
  // pairwise commuting
  for (const RatMatrix& x : gt.torus.basis)
    for (const RatMatrix& z : gt.torus.basis) CHECK(bracket(x, z).is_zero());

  const IsoParabolic bad{+1, 8, Composition{{1, 2}}};
  const GenericTorusResult ng = generic_torus(build_parabolic_iso(bad), Sampler{11});
  CHECK_FALSE(ng.ok);
  CHECK(ng.failure.find("NonSemisimpleStabiliser") != std::string::npos);
  REQUIRE(ng.witness.has_value());
  CHECK_FALSE(ng.witness->is_zero());
}

TEST_CASE("mrs_numeric produces a reductive stabiliser with the right invariants") {
  const IsoParabolic p{-1, 4, Composition{{1}}};
  const MatrixLieAlgebra q = build_parabolic_iso(p);
  const Sampler s{5};
  const MatrixLieAlgebra m = mrs_numeric(q, s.derive(p.to_string()));
  CHECK(m.dim() == 3);  // so_1 + sp_2
  CHECK(mrstab::realize::is_contained(m, q));
  CHECK(index_numeric(m, s.derive("rank")) == 1);
  const IdentifyResult id = identify_type(m, s.derive("identify"));
  REQUIRE(id.resolved);
  CHECK(id.type == NormalizedType{{SimpleType{Family::A, 1}}, 0});
  CHECK(id.dim == 3);
  CHECK(id.rank == 1);
  CHECK(id.derived_dim == 3);
  CHECK(id.center_dim == 0);
}

TEST_CASE("upsilon space and forms from coordinate vectors") {
  const MatrixLieAlgebra q = build_seaweed_gl(Composition{{2, 2}}, Composition{{4}});
  const auto desc = mrstab::meander::mrs_gl(Composition{{2, 2}}, Composition{{4}});
  const MatrixLieAlgebra m = embed_mrs_gl(desc, 4);
  const mrstab::linalg::Subspace up = upsilon_space(q, m);
  CHECK(up.dim() >= 1);
  // every Upsilon form kills m and [q, m]
  for (const RatVector& coords : up.basis()) {
    const LinearForm xi = form_from_coords(q, coords);
    for (const RatMatrix& mk : m.basis) {
      CHECK(xi.value(mk) == Rat(0));
      for (const RatMatrix& b : q.basis) CHECK(xi.value(bracket(b, mk)) == Rat(0));
    }
    // prescribed values are reproduced
    for (int i = 0; i < q.dim(); ++i) CHECK(xi.value(q.basis[i]) == coords[i]);
  }
  // containment precondition
  CHECK_THROWS_AS((void)upsilon_space(m, build_gl(4)), std::invalid_argument);
}

TEST_CASE("verify_mrs certifies the true stabiliser and rejects a small one") {
  const MatrixLieAlgebra q = build_seaweed_gl(Composition{{2, 2}}, Composition{{4}});
  const auto desc = mrstab::meander::mrs_gl(Composition{{2, 2}}, Composition{{4}});
  const MatrixLieAlgebra m = embed_mrs_gl(desc, 4);
  const Sampler s{3};
  const VerifyResult good = verify_mrs(q, m, s);
  CHECK(good.passed);
  CHECK(good.attempts >= 1);
  CHECK(good.upsilon_dim >= 1);
  CHECK(good.best_stabiliser_dim == m.dim());

  // the scalars alone are reductive and contained but too small: any form
  // killing [q, C I] = 0 has stabiliser of dimension >= index = 2 > 1
  const MatrixLieAlgebra scalars = make_algebra(4, {identity(4)}, "scalars");
  const VerifyResult bad = verify_mrs(q, scalars, s);
  CHECK_FALSE(bad.passed);
  CHECK(bad.best_stabiliser_dim > 1);

  // precondition: candidate must sit inside q
  CHECK_THROWS_AS((void)verify_mrs(scalars, q, s), std::invalid_argument);
}

TEST_CASE("identify_type recognises the classical algebras") {
  const Sampler s{19};
  const IdentifyResult gl2 = identify_type(build_gl(2), s.derive("gl2"));
  REQUIRE(gl2.resolved);
  CHECK(gl2.type == NormalizedType{{SimpleType{Family::A, 1}}, 1});
  CHECK(gl2.center_dim == 1);
  CHECK(gl2.derived_dim == 3);

  const IdentifyResult so6 = identify_type(build_iso_algebra(+1, 6), s.derive("so6"));
  REQUIRE(so6.resolved);
  CHECK(so6.type == NormalizedType{{SimpleType{Family::A, 3}}, 0});

  const IdentifyResult sp6 = identify_type(build_iso_algebra(-1, 6), s.derive("sp6"));
  REQUIRE(sp6.resolved);
  CHECK(sp6.type == NormalizedType{{SimpleType{Family::C, 3}}, 0});

  const IdentifyResult so7 = identify_type(build_iso_algebra(+1, 7), s.derive("so7"));
  REQUIRE(so7.resolved);
  CHECK(so7.type == NormalizedType{{SimpleType{Family::B, 3}}, 0});

  const IdentifyResult so4 = identify_type(build_iso_algebra(+1, 4), s.derive("so4"));
  REQUIRE(so4.resolved);
  CHECK(so4.type ==
        NormalizedType{{SimpleType{Family::A, 1}, SimpleType{Family::A, 1}}, 0});

  // zero algebra
  const IdentifyResult zero = identify_type(MatrixLieAlgebra{2, {}, "0"}, s);
  CHECK(zero.resolved);
  CHECK(zero.type == NormalizedType{});
  CHECK(zero.dim == 0);
  CHECK(zero.invariants() == "(dim 0, rank 0, derived 0, center 0)");
}

TEST_CASE("certified embedding tries the straight orientation first") {
  const Sampler s{23};
  const Composition a{{2, 2}}, b{{4}};
  const auto desc = mrstab::meander::mrs_gl(a, b);
  const CertifiedEmbedding ce =
      certify_gl_embedding(build_seaweed_gl(a, b), desc, s);
  CHECK(ce.verdict.passed);
  REQUIRE(ce.flips.size() == desc.factors.size());
  for (const auto& factor_flips : ce.flips)
    for (bool f : factor_flips) CHECK_FALSE(f);

  // scalar-only stabiliser: q(1,2 | 3) has index 1
  const Composition a2{{1, 2}}, b2{{3}};
  const CertifiedEmbedding ce2 =
      certify_gl_embedding(build_seaweed_gl(a2, b2), mrstab::meander::mrs_gl(a2, b2), s);
  CHECK(ce2.verdict.passed);
  CHECK(ce2.m.dim() == 1);
}
