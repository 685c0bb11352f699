#include "mrstab/exceptional.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace mrstab::exceptional {

using classical::IsoParabolic;
using meander::Composition;
using roots::ClassifiedSubdiagram;
using roots::Family;
using roots::RootSystem;
using roots::ThetaReduction;

namespace {

const RootSystem& cached_root_system(const SimpleType& t) {
  static std::mutex mu;
  static std::map<SimpleType, RootSystem>* cache = new std::map<SimpleType, RootSystem>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache->find(t);
  if (it == cache->end()) it = cache->emplace(t, RootSystem(t)).first;
  return it->second;
}

bool is_exceptional_family(Family f) {
  return f == Family::E || f == Family::F || f == Family::G;
}

void validate_pi(const SimpleType& type, const std::set<int>& pi) {
  type.validate();
  for (int i : pi)
    if (i < 1 || i > type.rank)
      throw std::invalid_argument("simple-root index " + std::to_string(i) +
                                  " out of range for " + type.to_string());
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string pi_to_string(const std::set<int>& pi) {
  std::string s;
  for (int i : pi) {
    if (!s.empty()) s += ",";
    s += std::to_string(i);
  }
  return s.empty() ? "-" : s;
}

// Appends `mult` copies of the simple type (f, rank) to `out`, applying the
// small-rank identifications; a D1 label would denote a torus and goes to
// the center instead.
void push_simple(Family f, int rank, int mult, NormalizedType& out) {
  if (rank < 1) throw std::invalid_argument("simple type of rank < 1");
  SimpleType t{f, rank};
  switch (f) {
    case Family::A: break;
    case Family::B:
      if (rank == 1) t = {Family::A, 1};
      break;
    case Family::C:
      if (rank == 1) t = {Family::A, 1};
      else if (rank == 2) t = {Family::B, 2};
      break;
    case Family::D:
      if (rank == 1) {
        out.center_dim += mult;
        return;
      }
      if (rank == 2) {
        out.simples.insert(out.simples.end(), 2 * mult, SimpleType{Family::A, 1});
        return;
      }
      if (rank == 3) t = {Family::A, 3};
      break;
    default: break;
  }
  t.validate();
  out.simples.insert(out.simples.end(), mult, t);
}

NormalizedType combine(NormalizedType x, const NormalizedType& y) {
  x.simples.insert(x.simples.end(), y.simples.begin(), y.simples.end());
  x.center_dim += y.center_dim;
  std::sort(x.simples.begin(), x.simples.end());
  return x;
}

// Positions (1-based) within `order` of the elements of `pi` that lie in it.
std::set<int> relabel_into(const std::vector<int>& order, const std::set<int>& pi) {
  std::set<int> out;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (pi.count(order[k])) out.insert(static_cast<int>(k) + 1);
  return out;
}

constexpr const char* kTableText = R"(# Maximal reductive stabilisers of the parabolic subalgebras p_pi of the
# exceptional simple Lie algebras whose pattern pi contains the simple root
# attached to the highest root (E6: a6, E7: a6, E8: a1, F4: a4); the patterns
# not listed here and not handled by the highest-root reduction or additivity
# are exactly the non-quasi-reductive ones.
# Simple-root numbering: E-series have a chain a1..a_{l-1} with the branch
# node a_l attached at a3 (E6), a4 (E7), a5 (E8); F4 is a1-a2=>a3-a4 with
# a1, a2 short; G2 has a1 short (no rows: its only candidate is excluded).
# Format: type; pi as sorted index list; index; stabiliser type; embedding note
# Note key: R(wk) = irreducible representation with highest weight the k-th
# fundamental weight, (x) = tensor product, hk^v = fundamental coweight,
# hk = fundamental weight as a Cartan element, id = trivial summand.
E6; 1,2,3,4,6; 2; G2; R(w1)+3id
E6; 2,3,4,6; 4; B3 + C; R(w3); h1^v-h5^v
E6; 2,3,6; 2; A1 + C; R(w1)+2id; h1^v-h5^v
E6; 3,6; 3; A1 + 2C; R(w1)+id; h1^v-h5^v, h2-h4
E6; 1,3,4,6; 1; A1; 2id (x) (R(w1)+2id)
E6; 1,3,6; 2; A1 + C; 2id (x) (R(w1)+id); h2-h4
E6; 1,2,3,6; 0; 0; trivial
E6; 1,3,5,6; 3; 2A1 + C; R(w1) (x) (R(w1')+id) (x) R(w1); h2^v-h4^v
E7; 1,2,3,4,5,6; 3; C3; R(w1)+id
E7; 2,3,4,5,6,7; 4; F4; R(w1)+id
E7; 3,4,5,6,7; 4; B4; R(w1)+id
E7; 3,4,5,6; 2; C2; R(w1)+id
E7; 4,5,6,7; 2; C2; R(w1)+id
E7; 5,6; 1; A1; R(w1)+id
E8; 1,2,3,4,5,6,8; 6; B6; R(w1)+id
E8; 1,2,3,4,5,6; 3; C3; R(w1)+id
E8; 1,2,3,4,5,8; 3; C3; R(w1)+id
E8; 1,2,3,4; 2; C2; R(w1)+id
E8; 1,2; 1; A1; R(w1)+id
F4; 2,3,4; 3; D3; R(w1)+id
F4; 3,4; 1; A1; R(w1)+id
)";

SimpleType parse_simple_type_token(const std::string& tok) {
  if (tok.size() < 2) throw std::invalid_argument("bad type token '" + tok + "'");
  const char f = tok[0];
  if (f < 'A' || f > 'G')
    throw std::invalid_argument("bad family letter in '" + tok + "'");
  int rank = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw std::invalid_argument("bad rank in '" + tok + "'");
    rank = rank * 10 + (tok[i] - '0');
  }
  SimpleType t{static_cast<Family>(f), rank};
  t.validate();
  return t;
}

}  // namespace

NormalizedType parse_type_label(const std::string& label) {
  NormalizedType out;
  const std::string whole = trim(label);
  if (whole.empty()) throw std::invalid_argument("empty type label");
  if (whole == "0") return out;
  std::stringstream ss(whole);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    if (term.empty()) throw std::invalid_argument("empty term in '" + label + "'");
    std::size_t p = 0;
    int mult = 0;
    while (p < term.size() && std::isdigit(static_cast<unsigned char>(term[p])))
      mult = mult * 10 + (term[p++] - '0');
    if (mult == 0) mult = 1;
    if (p >= term.size()) throw std::invalid_argument("bare multiplicity in '" + label + "'");
    const char f = term[p];
    std::string rest = term.substr(p + 1);
    if (rest.empty()) {
      // A bare letter is only meaningful as the center symbol.
      if (f != 'C') throw std::invalid_argument("rankless type in '" + label + "'");
      out.center_dim += mult;
      continue;
    }
    if (rest[0] == '^') {
      if (f != 'C') throw std::invalid_argument("exponent on a non-center term in '" + label + "'");
      out.center_dim += mult * std::stoi(rest.substr(1));
      continue;
    }
    if (f < 'A' || f > 'G')
      throw std::invalid_argument("bad family letter in '" + label + "'");
    int rank = 0;
    for (char c : rest) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad rank in '" + label + "'");
      rank = rank * 10 + (c - '0');
    }
    push_simple(static_cast<Family>(f), rank, mult, out);
  }
  std::sort(out.simples.begin(), out.simples.end());
  return out;
}

std::vector<TableRow> parse_table(std::istream& in) {
  std::vector<TableRow> rows;
  std::map<std::string, int> per_type_counter;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
      std::size_t semi = s.find(';', pos);
      if (semi == std::string::npos)
        throw std::invalid_argument("table line " + std::to_string(lineno) +
                                    ": expected 5 ';'-separated fields");
      fields.push_back(trim(s.substr(pos, semi - pos)));
      pos = semi + 1;
    }
    fields.push_back(trim(s.substr(pos)));  // the note may itself contain ';'

    TableRow row;
    row.type = parse_simple_type_token(fields[0]);
    row.row = ++per_type_counter[fields[0]];
    std::stringstream ps(fields[1]);
    std::string tok;
    while (std::getline(ps, tok, ',')) row.pi.push_back(std::stoi(trim(tok)));
    if (!std::is_sorted(row.pi.begin(), row.pi.end()))
      throw std::invalid_argument("table line " + std::to_string(lineno) +
                                  ": pattern must be sorted");
    row.index = std::stoi(fields[2]);
    row.mrs_label = fields[3];
    row.mrs = parse_type_label(row.mrs_label);
    row.embedding_note = fields[4];
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::string& table_data_text() {
  static const std::string text = kTableText;
  return text;
}

const std::vector<ExclusionRule>& exclusion_rules() {
  static const std::vector<ExclusionRule> rules = [] {
    std::vector<ExclusionRule> r;
    r.push_back({SimpleType{Family::E, 6}, {{6}}, {{1, 2, 3, 5, 6}}});
    r.push_back({SimpleType{Family::E, 7}, {{6}, {4, 5, 6}, {2, 3, 4, 5, 6}}, {}});
    // The last E8 entry is the full chain a1..a7: a connected pattern
    // containing both chain ends is either that line or the whole diagram.
    r.push_back({SimpleType{Family::E, 8},
                 {{1}, {1, 2, 3}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6, 7}},
                 {}});
    r.push_back({SimpleType{Family::F, 4}, {{4}}, {}});
    r.push_back({SimpleType{Family::G, 2}, {{2}}, {}});
    return r;
  }();
  return rules;
}

namespace {

const ExclusionRule& exclusion_rule_for(const SimpleType& type) {
  for (const ExclusionRule& r : exclusion_rules())
    if (r.type == type) return r;
  throw std::invalid_argument("no exclusion rule for " + type.to_string());
}

int distinguished_root(const SimpleType& type) {
  return roots::theta_tilde(cached_root_system(type)).alpha_tilde;
}

}  // namespace

const std::vector<TableRow>& exceptional_table() {
  static const std::vector<TableRow> table = [] {
    std::stringstream ss(table_data_text());
    std::vector<TableRow> rows = parse_table(ss);
    std::map<std::string, int> counts;
    for (const TableRow& row : rows) {
      ++counts[row.type.to_string()];
      if (!is_exceptional_family(row.type.family))
        throw std::logic_error("non-exceptional table row");
      if (row.index != row.mrs.rank())
        throw std::logic_error("table row " + row.type.to_string() + "(" +
                               std::to_string(row.row) +
                               "): index does not equal stabiliser rank");
      const RootSystem& rs = cached_root_system(row.type);
      std::set<int> pi(row.pi.begin(), row.pi.end());
      validate_pi(row.type, pi);
      if (pi.size() != row.pi.size())
        throw std::logic_error("duplicate index in a table pattern");
      if (!pi.count(distinguished_root(row.type)))
        throw std::logic_error("table pattern misses the distinguished root");
      if (roots::normalize_by_diagram_automorphism(rs, pi) != pi)
        throw std::logic_error("table pattern not in diagram-automorphism normal form");
    }
    if (counts["E6"] != 8 || counts["E7"] != 6 || counts["E8"] != 5 ||
        counts["F4"] != 2 || rows.size() != 21)
      throw std::logic_error("unexpected table shape");
    return rows;
  }();
  return table;
}

const TableRow& table_lookup(const SimpleType& type, const std::set<int>& pi) {
  validate_pi(type, pi);
  std::set<int> key = pi;
  if (type == SimpleType{Family::E, 6})
    key = roots::normalize_by_diagram_automorphism(cached_root_system(type), pi);
  const std::vector<int> v(key.begin(), key.end());
  for (const TableRow& row : exceptional_table())
    if (row.type == type && row.pi == v) return row;
  throw NotInTable("no table row for " + type.to_string() + " pattern {" +
                   pi_to_string(pi) + "}");
}

classical::IsoParabolic parabolic_from_subset(const SimpleType& type,
                                              const std::set<int>& pi) {
  validate_pi(type, pi);
  const int l = type.rank;
  if (static_cast<int>(pi.size()) == l)
    throw std::invalid_argument("full pattern: the parabolic is the whole algebra");
  std::vector<int> omitted;
  for (int i = 1; i <= l; ++i)
    if (!pi.count(i)) omitted.push_back(i);

  IsoParabolic p;
  std::vector<int> dims;
  switch (type.family) {
    case Family::B:
      p.epsilon = +1;
      p.n = 2 * l + 1;
      dims = omitted;
      break;
    case Family::C:
      p.epsilon = -1;
      p.n = 2 * l;
      dims = omitted;
      break;
    case Family::D: {
      p.epsilon = +1;
      p.n = 2 * l;
      const bool f1 = !pi.count(l - 1), f2 = !pi.count(l);
      for (int i : omitted)
        if (i <= l - 2) dims.push_back(i);
      if (f1 && f2) {
        // Both fork nodes omitted: the flag ends in an (l-1)-dimensional
        // isotropic subspace (the intersection of the two rulings).
        dims.push_back(l - 1);
      } else if (f1 || f2) {
        // One fork node omitted: the flag ends in a maximal isotropic
        // subspace; the two choices are exchanged by the diagram
        // automorphism and give the same composition.
        dims.push_back(l);
      }
      break;
    }
    default:
      throw std::invalid_argument("expected a B/C/D type, got " + type.to_string());
  }
  int prev = 0;
  for (int d : dims) {
    p.a.parts.push_back(d - prev);
    prev = d;
  }
  p.validate();
  return p;
}

meander::Composition seaweed_composition_a(const SimpleType& type,
                                           const std::set<int>& pi) {
  validate_pi(type, pi);
  if (type.family != Family::A)
    throw std::invalid_argument("expected a type-A pattern");
  const int n = type.rank + 1;
  Composition a;
  int prev = 0;
  for (int i = 1; i <= type.rank; ++i) {
    if (!pi.count(i)) {
      a.parts.push_back(i - prev);
      prev = i;
    }
  }
  a.parts.push_back(n - prev);
  return a;
}

namespace {

MrsResult mrs_any(const SimpleType& type, const std::set<int>& pi);

// The reduction step, with route/notes carried through the recursion.
MrsResult reduce_via_highest_root(const SimpleType& type, const std::set<int>& pi) {
  const RootSystem& rs = cached_root_system(type);
  const ThetaReduction th = roots::theta_tilde(rs);
  for (int i : pi)
    if (!th.pi_tilde.count(i))
      throw std::invalid_argument(
          "pattern not contained in the simple roots orthogonal to the highest root");
  MrsResult out;
  std::string sub;
  for (const std::set<int>& comp : rs.connected_components(th.pi_tilde)) {
    const ClassifiedSubdiagram cls = classify_connected_subset(rs, comp);
    const MrsResult piece = mrs_any(cls.type, relabel_into(cls.order, pi));
    out.mrs = combine(out.mrs, piece.mrs);
    if (!sub.empty()) sub += ", ";
    sub += piece.route;
    out.embedding_notes.insert(out.embedding_notes.end(), piece.embedding_notes.begin(),
                               piece.embedding_notes.end());
  }
  out.route = "reduce " + type.to_string() + " -> [" + sub + "]";
  out.index = out.mrs.rank();
  return out;
}

MrsResult mrs_exceptional_impl(const SimpleType& type, const std::set<int>& pi) {
  const RootSystem& rs = cached_root_system(type);
  if (!is_qr_exceptional(type, pi))
    throw NotQuasiReductive("p_pi of " + type.to_string() + " with pi = {" +
                            pi_to_string(pi) + "} is not quasi-reductive");
  const int at = distinguished_root(type);
  if (!pi.count(at)) return reduce_via_highest_root(type, pi);

  const std::vector<std::set<int>> comps = rs.connected_components(pi);
  MrsResult out;
  if (comps.size() == 1) {
    const TableRow& row = table_lookup(type, pi);
    out.mrs = row.mrs;
    out.route = "table " + type.to_string() + "(" + std::to_string(row.row) + ")";
    out.embedding_notes.push_back(row.embedding_note);
    out.index = out.mrs.rank();
    return out;
  }

  if (type == SimpleType{Family::E, 6}) {
    // Rank exceeds the cascade size here, so additivity is not available;
    // the classification lists the disconnected patterns explicitly.
    try {
      const TableRow& row = table_lookup(type, pi);
      out.mrs = row.mrs;
      out.route = "table " + type.to_string() + "(" + std::to_string(row.row) + ")";
      out.embedding_notes.push_back(row.embedding_note);
      out.index = out.mrs.rank();
      return out;
    } catch (const NotInTable&) {
      throw NotCovered("disconnected E6 pattern {" + pi_to_string(pi) +
                       "} is outside the curated classification");
    }
  }

  // rank(g) = cascade size for E7/E8/F4/G2: the answer is additive over the
  // diagram components of pi.
  std::string sub;
  for (const std::set<int>& comp : comps) {
    MrsResult piece;
    if (comp.count(at)) {
      const TableRow& row = table_lookup(type, comp);
      piece.mrs = row.mrs;
      piece.route = "table " + type.to_string() + "(" + std::to_string(row.row) + ")";
      piece.embedding_notes.push_back(row.embedding_note);
    } else {
      piece = reduce_via_highest_root(type, comp);
    }
    out.mrs = combine(out.mrs, piece.mrs);
    if (!sub.empty()) sub += "; ";
    sub += piece.route;
    out.embedding_notes.insert(out.embedding_notes.end(), piece.embedding_notes.begin(),
                               piece.embedding_notes.end());
  }
  out.route = "additive{" + sub + "}";
  out.index = out.mrs.rank();
  return out;
}

MrsResult mrs_any(const SimpleType& type, const std::set<int>& pi) {
  validate_pi(type, pi);
  MrsResult out;
  if (static_cast<int>(pi.size()) == type.rank) {
    out.mrs.simples.push_back(type);
    out.index = type.rank;
    out.route = type.to_string();
    return out;
  }
  switch (type.family) {
    case Family::A: {
      const Composition a = seaweed_composition_a(type, pi);
      const Composition b{{type.rank + 1}};
      const meander::GlMrsDescriptor d = meander::mrs_gl(a, b);
      for (const meander::GlMrsFactor& f : d.factors) {
        if (f.rank >= 2) out.mrs.simples.push_back({Family::A, f.rank - 1});
        out.mrs.center_dim += 1;
      }
      out.mrs.center_dim -= 1;  // trace-zero convention inside sl_n
      std::sort(out.mrs.simples.begin(), out.mrs.simples.end());
      out.route = "meander q(" + a.to_string() + "|" + b.to_string() + ") in sl_" +
                  std::to_string(type.rank + 1);
      break;
    }
    case Family::B:
    case Family::D: {
      const IsoParabolic p = parabolic_from_subset(type, pi);
      out.mrs = classical::mrs_so(p).normalized();
      out.route = p.to_string();
      break;
    }
    case Family::C: {
      const IsoParabolic p = parabolic_from_subset(type, pi);
      out.mrs = classical::mrs_sp(p).normalized();
      out.route = p.to_string();
      break;
    }
    default:
      return mrs_exceptional_impl(type, pi);
  }
  out.index = out.mrs.rank();
  return out;
}

}  // namespace

bool is_qr_parabolic(const SimpleType& type, const std::set<int>& pi) {
  validate_pi(type, pi);
  if (static_cast<int>(pi.size()) == type.rank) return true;
  switch (type.family) {
    case Family::A:
    case Family::C:
      return true;
    case Family::B:
    case Family::D:
      return classical::is_quasi_reductive_so(parabolic_from_subset(type, pi));
    default:
      return is_qr_exceptional(type, pi);
  }
}

bool is_qr_exceptional(const SimpleType& type, const std::set<int>& pi) {
  validate_pi(type, pi);
  if (!is_exceptional_family(type.family))
    throw std::invalid_argument("expected an exceptional type, got " + type.to_string());
  if (static_cast<int>(pi.size()) == type.rank) return true;

  const RootSystem& rs = cached_root_system(type);
  const ExclusionRule& rule = exclusion_rule_for(type);
  const std::vector<std::set<int>> comps = rs.connected_components(pi);
  for (const std::set<int>& comp : comps) {
    const std::vector<int> v(comp.begin(), comp.end());
    for (const std::vector<int>& bad : rule.forbidden_components)
      if (v == bad) return false;
  }
  if (!rule.forbidden_pi_up_to_automorphism.empty()) {
    const std::set<int> norm = roots::normalize_by_diagram_automorphism(rs, pi);
    const std::vector<int> v(norm.begin(), norm.end());
    for (const std::vector<int>& bad : rule.forbidden_pi_up_to_automorphism)
      if (v == bad) return false;
  }

  // Components avoiding the distinguished root live inside the subsystem
  // orthogonal to the highest root; quasi-reductivity there is decided by
  // the reduced type (only orthogonal parabolics can fail).
  const ThetaReduction th = roots::theta_tilde(rs);
  for (const std::set<int>& comp : comps) {
    if (comp.count(th.alpha_tilde)) continue;
    for (const std::set<int>& block : rs.connected_components(th.pi_tilde)) {
      if (!block.count(*comp.begin())) continue;
      const ClassifiedSubdiagram cls = classify_connected_subset(rs, block);
      if (!is_qr_parabolic(cls.type, relabel_into(cls.order, comp))) return false;
      break;
    }
  }
  return true;
}

NormalizedType mrs_via_highest_root_reduction(const SimpleType& type,
                                              const std::set<int>& pi) {
  validate_pi(type, pi);
  return reduce_via_highest_root(type, pi).mrs;
}

NormalizedType mrs_parabolic(const SimpleType& type, const std::set<int>& pi) {
  return mrs_any(type, pi).mrs;
}

MrsResult mrs_exceptional(const SimpleType& type, const std::set<int>& pi) {
  validate_pi(type, pi);
  if (!is_exceptional_family(type.family))
    throw std::invalid_argument("expected an exceptional type, got " + type.to_string());
  return mrs_any(type, pi);
}

int index_exceptional(const SimpleType& type, const std::set<int>& pi) {
  return mrs_exceptional(type, pi).index;
}

}  // namespace mrstab::exceptional
