#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrstab/exceptional.hpp"

using namespace mrstab::exceptional;
using mrstab::classical::IsoParabolic;
using mrstab::meander::Composition;
using mrstab::roots::Family;
using mrstab::roots::SimpleType;

namespace {

const SimpleType E6{Family::E, 6}, E7{Family::E, 7}, E8{Family::E, 8};
const SimpleType F4{Family::F, 4}, G2{Family::G, 2};

std::set<int> full_pi(const SimpleType& t) {
  std::set<int> pi;
  for (int i = 1; i <= t.rank; ++i) pi.insert(i);
  return pi;
}

std::vector<std::set<int>> all_subsets(const std::vector<int>& base) {
  std::vector<std::set<int>> out;
  for (unsigned mask = 0; mask < (1u << base.size()); ++mask) {
    std::set<int> pi;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (mask & (1u << i)) pi.insert(base[i]);
    out.push_back(std::move(pi));
  }
  return out;
}

NormalizedType merge(NormalizedType x, const NormalizedType& y) {
  x.simples.insert(x.simples.end(), y.simples.begin(), y.simples.end());
  std::sort(x.simples.begin(), x.simples.end());
  x.center_dim += y.center_dim;
  return x;
}

}  // namespace

TEST_CASE("table shape: 21 rows with consistent index and rank") {
  const auto& rows = exceptional_table();
  REQUIRE(rows.size() == 21);
  int e6 = 0, e7 = 0, e8 = 0, f4 = 0;
  for (const TableRow& r : rows) {
    CHECK(r.index == r.mrs.rank());
    CHECK(std::is_sorted(r.pi.begin(), r.pi.end()));
    if (r.type == E6) ++e6;
    if (r.type == E7) ++e7;
    if (r.type == E8) ++e8;
    if (r.type == F4) ++f4;
    // every pattern contains the root attached to the highest root
    const int at = r.type.family == Family::E ? (r.type.rank == 8 ? 1 : 6) : 4;
    CHECK(std::count(r.pi.begin(), r.pi.end(), at) == 1);
  }
  CHECK(e6 == 8);
  CHECK(e7 == 6);
  CHECK(e8 == 5);
  CHECK(f4 == 2);
}

TEST_CASE("embedded table text matches the data file byte for byte") {
  std::ifstream in(MRSTAB_DATA_DIR "/exceptional_tables.txt", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == table_data_text());
}

TEST_CASE("parse_table reproduces the builtin rows") {
  std::istringstream in(table_data_text());
  const std::vector<TableRow> parsed = parse_table(in);
  const auto& rows = exceptional_table();
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].type == rows[i].type);
    CHECK(parsed[i].row == rows[i].row);
    CHECK(parsed[i].pi == rows[i].pi);
    CHECK(parsed[i].index == rows[i].index);
    CHECK(parsed[i].mrs == rows[i].mrs);
    CHECK(parsed[i].mrs_label == rows[i].mrs_label);
    CHECK(parsed[i].embedding_note == rows[i].embedding_note);
  }
}

TEST_CASE("stabiliser-type labels") {
  CHECK(parse_type_label("0") == NormalizedType{});
  CHECK(parse_type_label("G2") == NormalizedType{{SimpleType{Family::G, 2}}, 0});
  CHECK(parse_type_label("B3 + C") == NormalizedType{{SimpleType{Family::B, 3}}, 1});
  CHECK(parse_type_label("2A1 + C") ==
        NormalizedType{{SimpleType{Family::A, 1}, SimpleType{Family::A, 1}}, 1});
  CHECK(parse_type_label("A1 + 2C") == NormalizedType{{SimpleType{Family::A, 1}}, 2});
  CHECK(parse_type_label("C^2") == NormalizedType{{}, 2});
  // small-rank identifications are applied on parse
  CHECK(parse_type_label("D3") == NormalizedType{{SimpleType{Family::A, 3}}, 0});
  CHECK(parse_type_label("C2") == NormalizedType{{SimpleType{Family::B, 2}}, 0});
}

TEST_CASE("table lookup, including E6 diagram-automorphism normalization") {
  CHECK(table_lookup(E6, {1, 2, 3, 4, 6}).index == 2);
  CHECK(table_lookup(E6, {1, 2, 3, 4, 6}).mrs_label == "G2");
  // {2,3,4,5,6} is the mirror image of {1,2,3,4,6}
  CHECK(table_lookup(E6, {2, 3, 4, 5, 6}).row == table_lookup(E6, {1, 2, 3, 4, 6}).row);
  CHECK(table_lookup(E6, {2, 3, 5, 6}).row == table_lookup(E6, {1, 3, 4, 6}).row);
  CHECK(table_lookup(E6, {1, 2, 3, 6}).index == 0);
  CHECK(table_lookup(E7, {2, 3, 4, 5, 6, 7}).mrs_label == "F4");
  CHECK(table_lookup(E8, {1, 2, 3, 4, 5, 6, 8}).mrs_label == "B6");
  CHECK(table_lookup(E8, {1, 2, 3, 4, 5, 6, 8}).index == 6);
  CHECK(table_lookup(F4, {2, 3, 4}).mrs_label == "D3");
  CHECK_THROWS_AS((void)table_lookup(E7, {6}), NotInTable);
}

TEST_CASE("exclusion rules") {
  const auto& rules = exclusion_rules();
  REQUIRE(rules.size() == 5);
  for (const ExclusionRule& r : rules) {
    if (r.type == E6) {
      CHECK(r.forbidden_components == std::vector<std::vector<int>>{{6}});
      CHECK(r.forbidden_pi_up_to_automorphism ==
            std::vector<std::vector<int>>{{1, 2, 3, 5, 6}});
    }
    if (r.type == E7) CHECK(r.forbidden_components.size() == 3);
    if (r.type == E8) CHECK(r.forbidden_components.size() == 4);
    if (r.type == F4) CHECK(r.forbidden_components == std::vector<std::vector<int>>{{4}});
    if (r.type == G2) CHECK(r.forbidden_components == std::vector<std::vector<int>>{{2}});
  }
}

TEST_CASE("quasi-reductivity of exceptional parabolics") {
  // every table pattern is quasi-reductive
  for (const TableRow& r : exceptional_table())
    CHECK(is_qr_exceptional(r.type, {r.pi.begin(), r.pi.end()}));
  // the whole algebra and the Borel are quasi-reductive
  for (const SimpleType& t : {E6, E7, E8, F4, G2}) {
    CHECK(is_qr_exceptional(t, full_pi(t)));
    CHECK(is_qr_exceptional(t, {}));
  }
  // exclusion patterns, as pi itself
  CHECK_FALSE(is_qr_exceptional(E6, {6}));
  CHECK_FALSE(is_qr_exceptional(E6, {2, 6}));  // {6} splits off as a component
  CHECK_FALSE(is_qr_exceptional(E6, {1, 2, 3, 5, 6}));
  CHECK_FALSE(is_qr_exceptional(E6, {1, 3, 4, 5, 6}));  // its mirror image
  CHECK_FALSE(is_qr_exceptional(E7, {6}));
  CHECK_FALSE(is_qr_exceptional(E7, {4, 5, 6}));
  CHECK_FALSE(is_qr_exceptional(E7, {2, 3, 4, 5, 6}));
  CHECK_FALSE(is_qr_exceptional(E7, {1, 4, 5, 6}));  // forbidden component {4,5,6}
  CHECK_FALSE(is_qr_exceptional(E8, {1}));
  CHECK_FALSE(is_qr_exceptional(E8, {1, 2, 3}));
  CHECK_FALSE(is_qr_exceptional(E8, {1, 2, 3, 4, 5}));
  CHECK_FALSE(is_qr_exceptional(E8, {1, 2, 3, 4, 5, 6, 7}));
  CHECK_FALSE(is_qr_exceptional(F4, {4}));
  CHECK_FALSE(is_qr_exceptional(G2, {2}));
  CHECK(is_qr_exceptional(G2, {1}));
  CHECK(is_qr_exceptional(E7, {1, 5, 6}));
  CHECK(is_qr_exceptional(E7, {5, 6}));
}

TEST_CASE("frozen stabiliser values") {
  const MrsResult g2 = mrs_exceptional(E6, {1, 2, 3, 4, 6});
  CHECK(g2.mrs == NormalizedType{{SimpleType{Family::G, 2}}, 0});
  CHECK(g2.index == 2);
  CHECK(g2.route == "table E6(1)");

  // the mirror pattern gives the same answer
  const MrsResult g2m = mrs_exceptional(E6, {2, 3, 4, 5, 6});
  CHECK(g2m.mrs == g2.mrs);

  const MrsResult f4 = mrs_exceptional(E7, {2, 3, 4, 5, 6, 7});
  CHECK(f4.mrs == NormalizedType{{SimpleType{Family::F, 4}}, 0});
  CHECK(f4.index == 4);
  CHECK(f4.route == "table E7(2)");

  const MrsResult b6 = mrs_exceptional(E8, {1, 2, 3, 4, 5, 6, 8});
  CHECK(b6.mrs == NormalizedType{{SimpleType{Family::B, 6}}, 0});
  CHECK(b6.index == 6);

  const MrsResult d3 = mrs_exceptional(F4, {2, 3, 4});
  CHECK(d3.mrs == NormalizedType{{SimpleType{Family::A, 3}}, 0});  // D3 = A3
  CHECK(d3.index == 3);

  // pi = Pi is the algebra itself
  const MrsResult whole = mrs_exceptional(E6, full_pi(E6));
  CHECK(whole.mrs == NormalizedType{{E6}, 0});
  CHECK(whole.index == 6);

  // Borel subalgebras via the highest-root reduction
  CHECK(index_exceptional(E6, {}) == 2);
  CHECK(index_exceptional(E7, {}) == 0);
  CHECK(index_exceptional(E8, {}) == 0);
  CHECK(index_exceptional(F4, {}) == 0);
  CHECK(index_exceptional(G2, {}) == 0);
  CHECK(mrs_exceptional(E6, {}).route.rfind("reduce E6 -> [", 0) == 0);

  // G2: the only proper quasi-reductive patterns are {} and {1}
  const MrsResult g2a1 = mrs_exceptional(G2, {1});
  CHECK(g2a1.mrs == NormalizedType{{SimpleType{Family::A, 1}}, 0});
  CHECK(g2a1.index == 1);
}

TEST_CASE("additivity over components for E7 and E8") {
  const MrsResult whole = mrs_exceptional(E7, {1, 5, 6});
  CHECK(whole.route.rfind("additive{", 0) == 0);
  const NormalizedType expected =
      merge(mrs_via_highest_root_reduction(E7, {1}), table_lookup(E7, {5, 6}).mrs);
  CHECK(whole.mrs == expected);

  const MrsResult w8 = mrs_exceptional(E8, {1, 2, 4, 5});
  const NormalizedType e8exp =
      merge(mrs_via_highest_root_reduction(E8, {4, 5}),
            table_lookup(E8, {1, 2}).mrs);
  CHECK(w8.mrs == e8exp);
}

TEST_CASE("exhaustive consistency: throwing matches the quasi-reductivity test") {
  for (const SimpleType& t : {E6, E7, E8, F4, G2}) {
    std::vector<int> base;
    for (int i = 1; i <= t.rank; ++i) base.push_back(i);
    for (const std::set<int>& pi : all_subsets(base)) {
      const bool qr = is_qr_exceptional(t, pi);
      CHECK(qr == is_qr_parabolic(t, pi));
      if (qr) {
        // no quasi-reductive pattern escapes the classification
        const MrsResult r = mrs_exceptional(t, pi);
        CHECK(r.index == r.mrs.rank());
        CHECK(r.index == index_exceptional(t, pi));
      } else {
        CHECK_THROWS_AS((void)mrs_exceptional(t, pi), NotQuasiReductive);
      }
    }
  }
}

TEST_CASE("standard parabolic to isotropic-flag dictionary") {
  // type A: parts are the gaps of the omitted nodes
  CHECK(seaweed_composition_a(SimpleType{Family::A, 4}, {1, 3}) == Composition{{2, 2, 1}});
  CHECK(seaweed_composition_a(SimpleType{Family::A, 3}, {}) == Composition{{1, 1, 1, 1}});
  CHECK(seaweed_composition_a(SimpleType{Family::A, 3}, {1, 2, 3}) == Composition{{4}});

  // types B and C: flag dimensions are the omitted node indices
  const IsoParabolic pb = parabolic_from_subset(SimpleType{Family::B, 5}, {1, 3, 4, 5});
  CHECK(pb.epsilon == +1);
  CHECK(pb.n == 11);
  CHECK(pb.a == Composition{{2}});
  const IsoParabolic pc = parabolic_from_subset(SimpleType{Family::C, 4}, {2, 3, 4});
  CHECK(pc.epsilon == -1);
  CHECK(pc.n == 8);
  CHECK(pc.a == Composition{{1}});
  const IsoParabolic pb2 = parabolic_from_subset(SimpleType{Family::B, 4}, {1, 3});
  CHECK(pb2.a == Composition{{2, 2}});  // omitted {2,4}

  // type D fork: both forks omitted -> ell-1; one fork omitted -> ell
  const IsoParabolic d_both = parabolic_from_subset(SimpleType{Family::D, 5}, {1, 2, 3});
  CHECK(d_both.n == 10);
  CHECK(d_both.a == Composition{{4}});
  const IsoParabolic d_one = parabolic_from_subset(SimpleType{Family::D, 5}, {1, 2, 3, 4});
  CHECK(d_one.a == Composition{{5}});
  const IsoParabolic d_chain = parabolic_from_subset(SimpleType{Family::D, 5}, {2, 3, 4, 5});
  CHECK(d_chain.a == Composition{{1}});
  const IsoParabolic d_mix = parabolic_from_subset(SimpleType{Family::D, 5}, {1, 4});
  CHECK(d_mix.a == Composition{{2, 1, 2}});  // omitted {2,3} and one fork
}

TEST_CASE("quasi-reductivity for classical standard parabolics") {
  // A and C are always quasi-reductive
  CHECK(is_qr_parabolic(SimpleType{Family::A, 5}, {2, 4}));
  CHECK(is_qr_parabolic(SimpleType{Family::C, 4}, {1, 3}));
  // B4 with omitted {1,3}: flag (1,2) has an odd part before an even one
  CHECK_FALSE(is_qr_parabolic(SimpleType{Family::B, 4}, {2, 4}));
  CHECK(is_qr_parabolic(SimpleType{Family::B, 4}, {1, 4}));
}

TEST_CASE("highest-root reduction agrees with the direct classical answer") {
  // For patterns avoiding the distinguished root the reduction must
  // reproduce the classical formulas applied to the parabolic itself.
  struct Target {
    SimpleType type;
    std::vector<int> pi_tilde;  // simple roots orthogonal to the highest root
  };
  const std::vector<Target> targets = {
      {SimpleType{Family::B, 5}, {1, 3, 4, 5}},
      {SimpleType{Family::C, 4}, {2, 3, 4}},
      {SimpleType{Family::D, 5}, {1, 3, 4, 5}},
      {SimpleType{Family::D, 6}, {1, 3, 4, 5, 6}},
  };
  for (const Target& t : targets) {
    for (const std::set<int>& pi : all_subsets(t.pi_tilde)) {
      const bool qr = is_qr_parabolic(t.type, pi);
      if (!qr) {
        CHECK_THROWS_AS((void)mrs_via_highest_root_reduction(t.type, pi),
                        NotQuasiReductive);
        continue;
      }
      CHECK(mrs_via_highest_root_reduction(t.type, pi) == mrs_parabolic(t.type, pi));
    }
  }
  // the reduction refuses patterns touching the distinguished root
  CHECK_THROWS_AS((void)mrs_via_highest_root_reduction(SimpleType{Family::B, 5}, {2}),
                  std::invalid_argument);
}

TEST_CASE("mrs_parabolic in type A uses the trace-zero convention") {
  // sl_4 Borel: index 1, purely central stabiliser
  CHECK(mrs_parabolic(SimpleType{Family::A, 3}, {}) == NormalizedType{{}, 1});
  // maximal parabolic of sl_5 omitting node 2: seaweed q(2,3|5)
  const NormalizedType m = mrs_parabolic(SimpleType{Family::A, 4}, {1, 3, 4});
  CHECK(m.rank() == 0);  // one GL_1 factor, absorbed by the trace condition
}
