#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "mrstab/rootsys.hpp"

using namespace mrstab::roots;

namespace {

RootVector theta_of(const RootSystem& rs) {
  // the unique root of maximal height
  const RootVector* best = nullptr;
  long best_h = -1;
  for (const RootVector& r : rs.positive_roots()) {
    long h = 0;
    for (int c : r) h += c;
    if (h > best_h) {
      best_h = h;
      best = &r;
    }
  }
  REQUIRE(best != nullptr);
  return *best;
}

}  // namespace

TEST_CASE("positive root counts") {
  struct Row {
    SimpleType t;
    std::size_t positive;
  };
  const Row rows[] = {
      {{Family::A, 1}, 1},  {{Family::A, 2}, 3},   {{Family::A, 5}, 15},
      {{Family::B, 2}, 4},  {{Family::B, 4}, 16},  {{Family::C, 3}, 9},
      {{Family::C, 4}, 16}, {{Family::D, 4}, 12},  {{Family::D, 6}, 30},
      {{Family::G, 2}, 6},  {{Family::F, 4}, 24},  {{Family::E, 6}, 36},
      {{Family::E, 7}, 63}, {{Family::E, 8}, 120},
  };
  for (const Row& r : rows) {
    const RootSystem rs(r.t);
    CHECK_MESSAGE(rs.positive_roots().size() == r.positive, r.t.to_string());
  }
}

TEST_CASE("highest root coefficients in the chain-first numbering") {
  CHECK(theta_of(RootSystem({Family::E, 6})) == RootVector{1, 2, 3, 2, 1, 2});
  CHECK(theta_of(RootSystem({Family::E, 7})) == RootVector{1, 2, 3, 4, 3, 2, 2});
  CHECK(theta_of(RootSystem({Family::E, 8})) == RootVector{2, 3, 4, 5, 6, 4, 2, 3});
  CHECK(theta_of(RootSystem({Family::F, 4})) == RootVector{2, 4, 3, 2});
  CHECK(theta_of(RootSystem({Family::G, 2})) == RootVector{3, 2});
  // classical sanity: A_l has theta = (1,..,1); C_l has theta = (2,..,2,1)
  CHECK(theta_of(RootSystem({Family::A, 4})) == RootVector{1, 1, 1, 1});
  CHECK(theta_of(RootSystem({Family::C, 3})) == RootVector{2, 2, 1});
  CHECK(theta_of(RootSystem({Family::B, 3})) == RootVector{1, 2, 2});
  CHECK(theta_of(RootSystem({Family::D, 4})) == RootVector{1, 2, 1, 1});
}

TEST_CASE("distinguished simple root attached to the highest root") {
  const auto tilde = [](SimpleType t) { return theta_tilde(RootSystem(t)).alpha_tilde; };
  CHECK(tilde({Family::E, 6}) == 6);
  CHECK(tilde({Family::E, 7}) == 6);
  CHECK(tilde({Family::E, 8}) == 1);
  CHECK(tilde({Family::F, 4}) == 4);
  CHECK(tilde({Family::G, 2}) == 2);
  CHECK(tilde({Family::B, 3}) == 2);
  CHECK(tilde({Family::C, 4}) == 1);
  CHECK(tilde({Family::D, 5}) == 2);
}

TEST_CASE("theta reduction identifies the orthogonal subsystem") {
  const RootSystem e6({Family::E, 6});
  const ThetaReduction red = theta_tilde(e6);
  CHECK(red.pi_tilde == std::set<int>{1, 2, 3, 4, 5});
  REQUIRE(red.reduced.has_value());
  CHECK(red.reduced->type == SimpleType{Family::A, 5});

  const RootSystem e7({Family::E, 7});
  const ThetaReduction red7 = theta_tilde(e7);
  REQUIRE(red7.reduced.has_value());
  CHECK(red7.reduced->type == SimpleType{Family::D, 6});

  const RootSystem f4({Family::F, 4});
  const ThetaReduction redf = theta_tilde(f4);
  REQUIRE(redf.reduced.has_value());
  CHECK(redf.reduced->type == SimpleType{Family::C, 3});

  const RootSystem e8({Family::E, 8});
  const ThetaReduction red8 = theta_tilde(e8);
  REQUIRE(red8.reduced.has_value());
  CHECK(red8.reduced->type == SimpleType{Family::E, 7});
}

TEST_CASE("connected components and classification") {
  const RootSystem e6({Family::E, 6});
  const auto comps = e6.connected_components({1, 2, 4, 6});
  // alpha6 hangs off alpha3, absent here: components {1,2}, {4}, {6}
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::set<int>{1, 2});
  CHECK(comps[1] == std::set<int>{4});
  CHECK(comps[2] == std::set<int>{6});

  const auto cls = classify_connected_subset(e6, {3, 4, 6});
  CHECK(cls.type == SimpleType{Family::A, 3});

  // branch through the fork of D5 gives a D-type subdiagram
  const RootSystem d5({Family::D, 5});
  const auto clsd = classify_connected_subset(d5, {2, 3, 4, 5});
  CHECK(clsd.type == SimpleType{Family::D, 4});
}

TEST_CASE("diagram automorphism normalization") {
  const RootSystem e6({Family::E, 6});
  CHECK(normalize_by_diagram_automorphism(e6, {4, 5, 6}) == std::set<int>{1, 2, 6});
  CHECK(normalize_by_diagram_automorphism(e6, {1, 2, 6}) == std::set<int>{1, 2, 6});
  const RootSystem a5({Family::A, 5});
  CHECK(normalize_by_diagram_automorphism(a5, {4, 5}) == std::set<int>{1, 2});
  const RootSystem d4({Family::D, 4});
  // the full S3 on {1,3,4} for D4
  CHECK(normalize_by_diagram_automorphism(d4, {4}) == std::set<int>{1});
  CHECK(normalize_by_diagram_automorphism(d4, {3}) == std::set<int>{1});
}

TEST_CASE("root strings are closed under negation and have two length classes at most") {
  for (const SimpleType t : {SimpleType{Family::G, 2}, SimpleType{Family::F, 4},
                             SimpleType{Family::B, 3}, SimpleType{Family::C, 3}}) {
    const RootSystem rs(t);
    const auto& pos = rs.positive_roots();
    std::set<RootVector> all(pos.begin(), pos.end());
    CHECK(all.size() == pos.size());
  }
}
