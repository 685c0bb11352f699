#include "mrstab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "mrstab/cascade.hpp"
#include "mrstab/classical.hpp"
#include "mrstab/exceptional.hpp"
#include "mrstab/meander.hpp"
#include "mrstab/oracle.hpp"
#include "mrstab/realize.hpp"
#include "mrstab/rootsys.hpp"

namespace mrstab::cli {

namespace {

using meander::Composition;
using nlohmann::ordered_json;
using oracle::Sampler;
using realize::MatrixLieAlgebra;
using roots::SimpleType;

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("cannot read " + what + " from '" + text + "'");
  return value;
}

Composition parse_composition(const std::string& text, const std::string& what) {
  Composition c;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ','))
    c.parts.push_back(parse_int(part, "a part of " + what));
  if (c.parts.empty()) throw std::invalid_argument(what + " is empty");
  c.validate();
  return c;
}

std::set<int> parse_subset(const std::string& text) {
  std::set<int> s;
  if (text.empty()) return s;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ','))
    s.insert(parse_int(part, "a node index"));
  return s;
}

SimpleType parse_type(const std::string& text) {
  if (text.size() < 2)
    throw std::invalid_argument("cannot read a type from '" + text + "'");
  const char f = text[0];
  if (f < 'A' || f > 'G')
    throw std::invalid_argument("unknown type family '" + std::string(1, f) + "'");
  SimpleType t{static_cast<roots::Family>(f), parse_int(text.substr(1), "the rank")};
  t.validate();
  return t;
}

// key=value parameter tokens.
std::map<std::string, std::string> parse_kv(const std::vector<std::string>& params) {
  std::map<std::string, std::string> kv;
  for (const std::string& tok : params) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (kv.count(key)) throw std::invalid_argument("duplicate parameter '" + key + "'");
    kv[key] = tok.substr(eq + 1);
  }
  return kv;
}

std::string require(const std::map<std::string, std::string>& kv, const std::string& key,
                    const std::string& kind) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument(kind + " requires the parameter " + key + "=...");
  return it->second;
}

classical::IsoParabolic iso_of(const Problem& p) {
  classical::IsoParabolic iso;
  iso.epsilon = p.kind == Kind::ParabolicSp ? -1 : +1;
  iso.n = p.n;
  iso.a = p.comp;
  iso.validate();
  return iso;
}

}  // namespace

Problem parse_problem(const std::string& kind_token,
                      const std::vector<std::string>& params) {
  Problem p;
  if (kind_token == "seaweed-gl") {
    p.kind = Kind::SeaweedGl;
    if (params.size() != 1)
      throw std::invalid_argument("seaweed-gl takes one parameter: a1,a2,../b1,b2,..");
    const std::string& pair = params[0];
    const auto slash = pair.find('/');
    if (slash == std::string::npos)
      throw std::invalid_argument("expected a1,a2,../b1,b2,.. with a '/', got '" + pair + "'");
    p.a = parse_composition(pair.substr(0, slash), "the top composition");
    p.b = parse_composition(pair.substr(slash + 1), "the bottom composition");
    if (p.a.total() != p.b.total())
      throw std::invalid_argument("the compositions have different totals");
    return p;
  }
  if (kind_token == "parabolic-sp" || kind_token == "parabolic-so") {
    p.kind = kind_token == "parabolic-sp" ? Kind::ParabolicSp : Kind::ParabolicSo;
    const auto kv = parse_kv(params);
    p.n = parse_int(require(kv, "n", kind_token), "n");
    p.comp = parse_composition(require(kv, "a", kind_token), "the composition a");
    iso_of(p);  // validates
    return p;
  }
  if (kind_token == "parabolic-exceptional") {
    p.kind = Kind::ParabolicExceptional;
    const auto kv = parse_kv(params);
    p.type = parse_type(require(kv, "type", kind_token));
    const auto it = kv.find("pi");
    p.pi = it == kv.end() ? std::set<int>{} : parse_subset(it->second);
    for (int i : p.pi)
      if (i < 1 || i > p.type.rank)
        throw std::invalid_argument("node index " + std::to_string(i) +
                                    " outside 1.." + std::to_string(p.type.rank));
    return p;
  }
  throw std::invalid_argument(
      "unknown kind '" + kind_token +
      "' (expected seaweed-gl, parabolic-sp, parabolic-so or parabolic-exceptional)");
}

std::string case_key(const Problem& p) {
  switch (p.kind) {
    case Kind::SeaweedGl:
      return "seaweed-gl " + p.a.to_string() + "/" + p.b.to_string();
    case Kind::ParabolicSp:
    case Kind::ParabolicSo:
      return std::string(p.kind == Kind::ParabolicSp ? "parabolic-sp" : "parabolic-so") +
             " n=" + std::to_string(p.n) + " a=" + p.comp.to_string();
    case Kind::ParabolicExceptional: {
      std::string pi;
      for (int i : p.pi) {
        if (!pi.empty()) pi += ",";
        pi += std::to_string(i);
      }
      return "parabolic-exceptional type=" + p.type.to_string() + " pi=" + pi;
    }
  }
  throw std::logic_error("unreachable");
}

Problem parse_case_key(const std::string& key) {
  std::istringstream in(key);
  std::string kind;
  in >> kind;
  std::vector<std::string> params;
  std::string tok;
  while (in >> tok) params.push_back(tok);
  // "pi=" with an empty right-hand side round-trips as an empty subset.
  return parse_problem(kind, params);
}

namespace {

// ---------------------------------------------------------------------------
// Predictions from the formula modules.
// ---------------------------------------------------------------------------

long simple_dim(const SimpleType& t) {
  const roots::RootSystem rs(t);
  return static_cast<long>(2 * rs.positive_roots().size()) + t.rank;
}

struct Prediction {
  bool qr = true;
  bool covered = true;
  std::string text;        // factors / type label, or the obstruction
  std::string normalized;  // normal form label
  int index = -1;
  long dim = -1;
  int rank = -1;
  long derived = -1;
  int center = -1;
  std::string route;       // exceptional dispatch trace
  bool realizable = false;
};

void fill_from_normalized(const classical::NormalizedType& nt, Prediction& out) {
  out.normalized = nt.to_string();
  out.center = nt.center_dim;
  out.derived = 0;
  for (const SimpleType& s : nt.simples) out.derived += simple_dim(s);
  out.dim = out.derived + out.center;
  out.rank = nt.rank();
}

Prediction predict(const Problem& p) {
  Prediction out;
  switch (p.kind) {
    case Kind::SeaweedGl: {
      const meander::GlMrsDescriptor desc = meander::mrs_gl(p.a, p.b);
      out.index = meander::seaweed_index(p.a, p.b);
      std::vector<int> ranks;
      for (const auto& f : desc.factors) ranks.push_back(f.rank);
      std::sort(ranks.rbegin(), ranks.rend());
      classical::NormalizedType nt;
      out.dim = 0;
      for (int r : ranks) {
        if (!out.text.empty()) out.text += " × ";
        out.text += "GL" + std::to_string(r);
        out.dim += static_cast<long>(r) * r;
        if (r >= 2) nt.simples.push_back({roots::Family::A, r - 1});
        nt.center_dim += 1;
      }
      if (out.text.empty()) out.text = "0";
      std::sort(nt.simples.begin(), nt.simples.end());
      out.normalized = nt.to_string();
      out.rank = out.index;
      out.center = nt.center_dim;
      out.derived = out.dim - out.center;
      out.realizable = true;
      return out;
    }
    case Kind::ParabolicSp: {
      const classical::ReductiveType rt = classical::mrs_sp(iso_of(p));
      out.text = rt.to_string();
      out.index = rt.rank();
      out.dim = rt.dim();
      fill_from_normalized(rt.normalized(), out);
      out.rank = out.index;
      out.realizable = true;
      return out;
    }
    case Kind::ParabolicSo: {
      const classical::IsoParabolic iso = iso_of(p);
      if (!classical::is_quasi_reductive_so(iso)) {
        out.qr = false;
        out.text = "not quasi-reductive";
        out.realizable = true;
        return out;
      }
      const classical::ReductiveType rt = classical::mrs_so(iso);
      out.text = rt.to_string();
      out.index = rt.rank();
      out.dim = rt.dim();
      fill_from_normalized(rt.normalized(), out);
      out.rank = out.index;
      out.realizable = true;
      return out;
    }
    case Kind::ParabolicExceptional: {
      if (!exceptional::is_qr_exceptional(p.type, p.pi)) {
        out.qr = false;
        out.text = "not quasi-reductive";
        return out;
      }
      try {
        const exceptional::MrsResult res = exceptional::mrs_exceptional(p.type, p.pi);
        out.text = res.mrs.to_string();
        out.index = res.index;
        out.route = res.route;
        fill_from_normalized(res.mrs, out);
      } catch (const exceptional::NotCovered& e) {
        out.covered = false;
        out.text = e.what();
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Oracle-backed verification of one case.
// ---------------------------------------------------------------------------

struct Verdict {
  std::string key;
  Prediction pred;
  bool pass = true;
  bool ran_numeric = false;
  std::optional<bool> upsilon;
  int numeric_index = -1;
  long numeric_dim = -1;
  int numeric_rank = -1;
  long numeric_derived = -1;
  int numeric_center = -1;
  std::string identified;
  std::vector<std::string> notes;
  std::uint64_t case_seed = 0;
  int exit_code = 0;
};

MatrixLieAlgebra realize_problem(const Problem& p) {
  if (p.kind == Kind::SeaweedGl) return realize::build_seaweed_gl(p.a, p.b);
  return realize::build_parabolic_iso(iso_of(p));
}

Verdict run_verify(const Problem& p, const Options& opt) {
  Verdict v;
  v.key = case_key(p);
  const Sampler sampler = Sampler{opt.seed}.derive(v.key);
  v.case_seed = sampler.seed;
  try {
    v.pred = predict(p);
  } catch (const std::exception& e) {
    v.pass = false;
    v.exit_code = 1;
    v.notes.push_back(std::string("prediction failed: ") + e.what());
    return v;
  }
  if (!v.pred.covered) {
    v.exit_code = 3;
    v.notes.push_back("not covered by the tables");
    return v;
  }
  if (p.kind == Kind::ParabolicExceptional) {
    v.notes.push_back("structural checks only (no matrix model for exceptional types)");
    v.exit_code = v.pred.qr ? 0 : 2;
    return v;
  }
  if (opt.verify_level == "off") {
    v.notes.push_back("verification off");
    v.exit_code = v.pred.qr ? 0 : 2;
    return v;
  }

  try {
    const MatrixLieAlgebra q = realize_problem(p);

    if (!v.pred.qr) {
      Sampler deep = sampler;
      deep.max_resamples = 20;
      const oracle::GenericTorusResult gt = oracle::generic_torus(q, deep);
      v.ran_numeric = true;
      v.numeric_index = oracle::index_numeric(q, sampler);
      v.numeric_dim = q.dim();
      if (gt.ok) {
        v.pass = false;
        v.exit_code = 1;
        v.notes.push_back("predicted not quasi-reductive, but the generic stabiliser is toral");
      } else {
        v.exit_code = 2;
        v.notes.push_back("confirmed: " + gt.failure);
      }
      return v;
    }

    v.numeric_index = oracle::index_numeric(q, sampler);
    v.ran_numeric = true;
    if (v.numeric_index != v.pred.index) {
      v.pass = false;
      v.notes.push_back("index mismatch: formula " + std::to_string(v.pred.index) +
                        ", numeric " + std::to_string(v.numeric_index));
    }

    if (opt.verify_level == "full") {
      const MatrixLieAlgebra mn = oracle::mrs_numeric(q, sampler);
      const oracle::IdentifyResult id = oracle::identify_type(mn, sampler.derive("identify"));
      v.numeric_dim = mn.dim();
      v.numeric_rank = id.rank;
      v.numeric_derived = id.derived_dim;
      v.numeric_center = id.center_dim;
      if (id.resolved) v.identified = id.type.to_string();
      const bool tuple_ok = v.numeric_dim == v.pred.dim && v.numeric_rank == v.pred.rank &&
                            v.numeric_derived == v.pred.derived &&
                            v.numeric_center == v.pred.center;
      if (!tuple_ok) {
        v.pass = false;
        v.notes.push_back("invariant tuple mismatch: numeric (dim " +
                          std::to_string(v.numeric_dim) + ", rank " +
                          std::to_string(v.numeric_rank) + ", derived " +
                          std::to_string(v.numeric_derived) + ", center " +
                          std::to_string(v.numeric_center) + ")");
      } else {
        v.notes.push_back("numeric invariants match");
      }
      if (id.resolved && !v.identified.empty() && v.identified != v.pred.normalized) {
        v.pass = false;
        v.notes.push_back("identified type " + v.identified + " differs from predicted " +
                          v.pred.normalized);
      }

      if (p.kind == Kind::SeaweedGl) {
        const oracle::CertifiedEmbedding ce =
            oracle::certify_gl_embedding(q, meander::mrs_gl(p.a, p.b), sampler);
        v.upsilon = ce.verdict.passed;
        if (!ce.verdict.passed) {
          v.pass = false;
          v.notes.push_back("embedding certification failed: " + ce.verdict.message);
        } else {
          v.notes.push_back("upsilon PASS");
        }
      } else if (p.kind == Kind::ParabolicSp) {
        const oracle::VerifyResult vr =
            oracle::verify_mrs(q, realize::embed_mrs_sp(iso_of(p)), sampler);
        v.upsilon = vr.passed;
        if (!vr.passed) {
          v.pass = false;
          v.notes.push_back("embedding certification failed: " + vr.message);
        } else {
          v.notes.push_back("upsilon PASS");
        }
      } else if (p.kind == Kind::ParabolicSo) {
        const classical::IsoParabolic iso = iso_of(p);
        if (classical::mrs_so_case(iso) <= 2) {
          const oracle::VerifyResult vr =
              oracle::verify_mrs(q, realize::embed_mrs_so(iso), sampler);
          v.upsilon = vr.passed;
          if (!vr.passed) {
            v.pass = false;
            v.notes.push_back("embedding certification failed: " + vr.message);
          } else {
            v.notes.push_back("upsilon PASS");
          }
        } else {
          v.notes.push_back(
              "maximal-isotropic odd case: certified via invariants (no block-wise embedding)");
        }
      }
    }
  } catch (const std::exception& e) {
    v.pass = false;
    v.notes.push_back(std::string("numeric verification failed: ") + e.what());
  }
  v.exit_code = v.pass ? 0 : 1;
  return v;
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const std::string& n : notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  return out;
}

ordered_json invariants_json(long dim, int rank, long derived, int center) {
  return ordered_json{{"dim", dim}, {"rank", rank}, {"derived", derived}, {"center", center}};
}

ordered_json prediction_json(const Prediction& pred) {
  ordered_json j;
  j["quasi_reductive"] = pred.qr;
  j["covered"] = pred.covered;
  if (pred.qr && pred.covered) {
    j["mrs"] = pred.text;
    j["normalized"] = pred.normalized;
    j["index"] = pred.index;
    j["invariants"] = invariants_json(pred.dim, pred.rank, pred.derived, pred.center);
    if (!pred.route.empty()) j["route"] = pred.route;
  }
  return j;
}

ordered_json verdict_json(const Verdict& v, const Options& opt) {
  ordered_json j;
  j["case"] = v.key;
  j["predicted"] = prediction_json(v.pred);
  if (v.ran_numeric) {
    ordered_json njs;
    njs["index"] = v.numeric_index;
    if (v.numeric_dim >= 0) {
      njs["dim"] = v.numeric_dim;
      njs["rank"] = v.numeric_rank;
      njs["derived"] = v.numeric_derived;
      njs["center"] = v.numeric_center;
      if (!v.identified.empty())
        njs["identified"] = v.identified;
      else
        njs["identified"] = nullptr;
    }
    j["numeric_invariants"] = njs;
  } else {
    j["numeric_invariants"] = nullptr;
  }
  if (v.upsilon)
    j["upsilon_pass"] = *v.upsilon;
  else
    j["upsilon_pass"] = nullptr;
  j["seeds"] = ordered_json{{"global", opt.seed}, {"case", v.case_seed}};
  j["verdict"] = v.pass ? "PASS" : "FAIL";
  j["detail"] = join_notes(v.notes);
  return j;
}

std::string verdict_label(const Verdict& v) {
  if (!v.pass) return "FAIL";
  if (v.exit_code == 3) return "NOT-COVERED";
  if (!v.pred.qr) return "NOT-QR";
  return "PASS";
}

// x rendered in half-integer steps without floating point formatting.
std::string half(int twice, bool negate = false) {
  const int sign = (twice < 0) != negate && twice != 0 ? -1 : 1;
  const int mag = twice < 0 ? -twice : twice;
  std::string s = sign < 0 ? "-" : "";
  s += std::to_string(mag / 2);
  if (mag % 2) s += ".5";
  return s;
}

void emit_dot(const meander::MeanderGraph& g, const std::string& key, int index,
              std::ostream& out) {
  out << "// " << key << "; index " << index << "\n";
  out << "graph meander {\n";
  out << "  layout=neato;\n  splines=line;\n";
  out << "  node [shape=circle, fixedsize=true, width=0.35, fontsize=10];\n";
  for (int v = 1; v <= g.n; ++v)
    out << "  v" << v << " [label=\"" << v << "\", pos=\"" << (v - 1) << ",0!\"];\n";
  auto arcs = [&](const std::vector<std::pair<int, int>>& edges, const char* tag,
                  bool below) {
    for (const auto& [lo, hi] : edges) {
      if (lo == hi) continue;
      const std::string mid = std::string(tag) + std::to_string(lo) + "_" + std::to_string(hi);
      out << "  " << mid << " [shape=point, width=0.02, label=\"\", pos=\""
          << half(lo + hi - 2) << "," << half(hi - lo, below) << "!\"];\n";
      out << "  v" << lo << " -- " << mid << " -- v" << hi << ";\n";
    }
  };
  out << "  // top arcs\n";
  arcs(g.a_edges, "a", false);
  out << "  // bottom arcs\n";
  arcs(g.b_edges, "b", true);
  out << "}\n";
}

std::string component_text(const meander::Component& c) {
  std::string s = c.is_cycle() ? "cycle {" : "segment {";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.vertices[i]);
  }
  s += "} dim " + std::to_string(c.dimension);
  if (c.maximal) s += " maximal";
  return s;
}

std::string root_vector_text(const roots::RootVector& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Sweep enumeration.
// ---------------------------------------------------------------------------

std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  if (n <= 0) return out;
  for (unsigned long mask = 0; mask < (1UL << (n - 1)); ++mask) {
    Composition c;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1UL << i)) {
        c.parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    c.parts.push_back(run);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Problem> enumerate_sweep(const std::string& kind,
                                     const std::vector<std::string>& params,
                                     const Options& opt) {
  std::vector<Problem> cases;
  if (kind == "seaweed-gl") {
    if (opt.max_n > 6)
      throw std::invalid_argument("seaweed-gl sweeps support --max-n up to 6");
    for (int n = 1; n <= opt.max_n; ++n) {
      const std::vector<Composition> comps = compositions_of(n);
      for (const Composition& a : comps)
        for (const Composition& b : comps) {
          Problem p;
          p.kind = Kind::SeaweedGl;
          p.a = a;
          p.b = b;
          cases.push_back(std::move(p));
        }
    }
    return cases;
  }
  if (kind == "parabolic-sp" || kind == "parabolic-so") {
    if (opt.max_n > 12)
      throw std::invalid_argument("classical parabolic sweeps support --max-n up to 12");
    for (int n = 2; n <= opt.max_n; ++n) {
      if (kind == "parabolic-sp" && n % 2) continue;
      for (int r = 1; r <= n / 2; ++r)
        for (Composition& a : compositions_of(r)) {
          Problem p;
          p.kind = kind == "parabolic-sp" ? Kind::ParabolicSp : Kind::ParabolicSo;
          p.n = n;
          p.comp = std::move(a);
          cases.push_back(std::move(p));
        }
    }
    return cases;
  }
  if (kind == "parabolic-exceptional") {
    const auto kv = parse_kv(params);
    const SimpleType type = parse_type(require(kv, "type", "sweep parabolic-exceptional"));
    const int rank = type.rank;
    for (unsigned long mask = 0; mask < (1UL << rank); ++mask) {
      Problem p;
      p.kind = Kind::ParabolicExceptional;
      p.type = type;
      for (int i = 0; i < rank; ++i)
        if (mask & (1UL << i)) p.pi.insert(i + 1);
      cases.push_back(std::move(p));
    }
    return cases;
  }
  throw std::invalid_argument("unknown sweep kind '" + kind + "'");
}

std::vector<Verdict> run_sweep_cases(const std::vector<Problem>& cases, const Options& opt) {
  std::vector<Verdict> results(cases.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = std::min<std::size_t>(hw, cases.size());
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      try {
        results[i] = run_verify(cases[i], opt);
      } catch (const std::exception& e) {
        results[i].key = case_key(cases[i]);
        results[i].pass = false;
        results[i].exit_code = 1;
        results[i].notes.push_back(std::string("unexpected error: ") + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  std::sort(results.begin(), results.end(),
            [](const Verdict& x, const Verdict& y) { return x.key < y.key; });
  return results;
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

int cmd_index(const Problem& p, const Options& opt, std::ostream& out, std::ostream& err) {
  int index = -1;
  std::string note;
  switch (p.kind) {
    case Kind::SeaweedGl:
      index = meander::seaweed_index(p.a, p.b);
      break;
    case Kind::ParabolicSp:
      index = classical::mrs_sp(iso_of(p)).rank();
      break;
    case Kind::ParabolicSo: {
      const classical::IsoParabolic iso = iso_of(p);
      if (classical::is_quasi_reductive_so(iso)) {
        index = classical::mrs_so(iso).rank();
      } else {
        if (p.n > 20) {
          err << "error: numeric fallback for non-quasi-reductive cases is limited to n <= 20\n";
          return 1;
        }
        const Sampler s = Sampler{opt.seed}.derive(case_key(p));
        index = oracle::index_numeric(realize::build_parabolic_iso(iso), s);
        note = "sampled (not quasi-reductive; no closed formula applies)";
      }
      break;
    }
    case Kind::ParabolicExceptional:
      index = exceptional::index_exceptional(p.type, p.pi);
      break;
  }
  if (opt.format == "json") {
    ordered_json j;
    j["case"] = case_key(p);
    j["index"] = index;
    if (!note.empty()) j["note"] = note;
    out << j.dump(2) << "\n";
  } else {
    out << index << "\n";
    if (!note.empty()) err << "note: " << note << "\n";
  }
  return 0;
}

int cmd_mrs(const Problem& p, const Options& opt, std::ostream& out, std::ostream& err) {
  const Prediction pred = predict(p);
  if (!pred.covered) {
    err << "error: " << case_key(p) << ": " << pred.text << "\n";
    return 3;
  }
  if (!pred.qr) {
    err << "error: " << case_key(p) << " is not quasi-reductive\n";
    return 2;
  }
  if (opt.format == "json") {
    ordered_json j;
    j["case"] = case_key(p);
    j["predicted"] = prediction_json(pred);
    out << j.dump(2) << "\n";
  } else {
    out << pred.text << "; index " << pred.index;
    if (!pred.route.empty()) out << " (" << pred.route << ")";
    out << "\n";
  }
  return 0;
}

int cmd_meander(const Problem& p, const Options& opt, std::ostream& out) {
  const meander::MeanderGraph g = meander::build_meander(p.a, p.b);
  const int index = meander::seaweed_index(p.a, p.b);
  if (opt.format == "dot") {
    emit_dot(g, case_key(p), index, out);
    return 0;
  }
  if (opt.format == "json") {
    ordered_json j;
    j["case"] = case_key(p);
    j["n"] = g.n;
    j["a_edges"] = g.a_edges;
    j["b_edges"] = g.b_edges;
    ordered_json comps = ordered_json::array();
    for (const auto& c : g.components) {
      comps.push_back(ordered_json{{"kind", c.is_cycle() ? "cycle" : "segment"},
                                   {"vertices", c.vertices},
                                   {"dimension", c.dimension},
                                   {"maximal", c.maximal}});
    }
    j["components"] = comps;
    j["index"] = index;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "meander " << p.a.to_string() << "|" << p.b.to_string() << ", n=" << g.n << "\n";
  for (const auto& c : g.components) out << "  " << component_text(c) << "\n";
  out << "index " << index << "\n";
  return 0;
}

int cmd_cascade(const std::string& type_tok, const std::vector<std::string>& params,
                const Options& opt, std::ostream& out) {
  const SimpleType type = parse_type(type_tok);
  const auto kv = parse_kv(params);
  std::set<int> pi;
  bool restricted = false;
  if (const auto it = kv.find("pi"); it != kv.end()) {
    restricted = true;
    pi = parse_subset(it->second);
    for (int i : pi)
      if (i < 1 || i > type.rank)
        throw std::invalid_argument("node index " + std::to_string(i) + " outside 1.." +
                                    std::to_string(type.rank));
  }
  const roots::RootSystem rs(type);
  const cascade::Cascade k =
      restricted ? cascade::kostant_cascade(rs, pi) : cascade::kostant_cascade(rs);
  if (opt.format == "json") {
    ordered_json j;
    j["type"] = type.to_string();
    if (restricted) j["pi"] = pi;
    j["size"] = k.size();
    ordered_json members = ordered_json::array();
    for (std::size_t i = 0; i < k.size(); ++i)
      members.push_back(
          ordered_json{{"subset", k.members[i]}, {"highest_root", k.roots[i]}});
    j["members"] = members;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "cascade of " << type.to_string();
  if (restricted) {
    out << " restricted to {";
    bool first = true;
    for (int i : pi) {
      if (!first) out << ",";
      out << i;
      first = false;
    }
    out << "}";
  }
  out << ": size " << k.size() << "\n";
  for (std::size_t i = 0; i < k.size(); ++i) {
    out << "  K" << (i + 1) << " = {";
    bool first = true;
    for (int v : k.members[i]) {
      if (!first) out << ",";
      out << v;
      first = false;
    }
    out << "}  highest root " << root_vector_text(k.roots[i]) << "\n";
  }
  return 0;
}

int cmd_verify(const Problem& p, const Options& opt, std::ostream& out) {
  const Verdict v = run_verify(p, opt);
  if (opt.format == "json") {
    out << verdict_json(v, opt).dump(2) << "\n";
  } else {
    out << (v.pass ? "PASS" : "FAIL") << " " << v.key;
    std::string detail;
    if (v.pred.qr && v.pred.covered)
      detail = "predicted " + v.pred.text + "; index " + std::to_string(v.pred.index);
    else
      detail = "predicted " + v.pred.text;
    const std::string notes = join_notes(v.notes);
    if (!notes.empty()) detail += "; " + notes;
    out << " (" << detail << ")\n";
  }
  return v.exit_code;
}

int cmd_sweep(const std::string& kind, const std::vector<std::string>& params,
              const Options& opt, std::ostream& out) {
  const std::vector<Problem> cases = enumerate_sweep(kind, params, opt);
  const std::vector<Verdict> results = run_sweep_cases(cases, opt);
  int pass = 0, fail = 0, notqr = 0, notcov = 0;
  for (const Verdict& v : results) {
    if (!v.pass)
      ++fail;
    else if (v.exit_code == 3)
      ++notcov;
    else if (!v.pred.qr)
      ++notqr;
    else
      ++pass;
  }
  if (opt.format == "json") {
    ordered_json j;
    j["sweep"] = kind;
    j["max_n"] = opt.max_n;
    j["verify"] = opt.verify_level;
    j["seed"] = opt.seed;
    ordered_json arr = ordered_json::array();
    for (const Verdict& v : results) arr.push_back(verdict_json(v, opt));
    j["cases"] = arr;
    j["summary"] = ordered_json{{"cases", results.size()},
                                {"pass", pass},
                                {"fail", fail},
                                {"not_quasi_reductive", notqr},
                                {"not_covered", notcov}};
    out << j.dump(2) << "\n";
  } else {
    for (const Verdict& v : results) {
      out << v.key << "\t";
      if (v.pred.covered && v.pred.qr)
        out << v.pred.text << "\tindex=" << v.pred.index;
      else
        out << v.pred.text << "\t-";
      out << "\t" << verdict_label(v);
      const std::string notes = join_notes(v.notes);
      if (!v.pass && !notes.empty()) out << "\t" << notes;
      out << "\n";
    }
    out << "cases=" << results.size() << " pass=" << pass << " fail=" << fail
        << " not-qr=" << notqr << " not-covered=" << notcov << "\n";
  }
  return fail > 0 ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"index and maximal reductive stabilisers of seaweed and parabolic subalgebras"};
  app.name("mrstab");
  app.require_subcommand(1);

  Options opt;
  std::string kind_tok, pair_tok, type_tok;
  std::vector<std::string> params;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format: text | json | dot");
    sub->add_option("--seed", opt.seed, "global sampling seed");
    sub->add_option("--verify", opt.verify_level, "verification level: off | fast | full");
    sub->add_option("--max-n", opt.max_n, "sweep size bound");
  };

  CLI::App* c_index = app.add_subcommand("index", "predicted index of one case");
  c_index->add_option("kind", kind_tok)->required();
  c_index->add_option("params", params);
  add_common(c_index);

  CLI::App* c_mrs = app.add_subcommand("mrs", "maximal reductive stabiliser of one case");
  c_mrs->add_option("kind", kind_tok)->required();
  c_mrs->add_option("params", params);
  add_common(c_mrs);

  CLI::App* c_meander =
      app.add_subcommand("meander", "meander graph of a seaweed (DOT by default)");
  c_meander->add_option("pair", pair_tok, "a1,a2,../b1,b2,..")->required();
  add_common(c_meander);

  CLI::App* c_cascade = app.add_subcommand("cascade", "Kostant cascade of a simple type");
  c_cascade->add_option("type", type_tok, "e.g. E6, D5, A3")->required();
  c_cascade->add_option("params", params, "optional pi=1,3,6 restriction");
  add_common(c_cascade);

  CLI::App* c_verify =
      app.add_subcommand("verify", "predict, realize and certify one case numerically");
  c_verify->add_option("kind", kind_tok)->required();
  c_verify->add_option("params", params);
  add_common(c_verify);

  CLI::App* c_sweep = app.add_subcommand("sweep", "verify all cases up to a bound");
  c_sweep->add_option("kind", kind_tok)->required();
  c_sweep->add_option("params", params, "kind-specific parameters (type=E6)");
  add_common(c_sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 64;
  }

  try {
    if (app.got_subcommand(c_meander)) {
      if (!c_meander->count("--format")) opt.format = "dot";
      return cmd_meander(parse_problem("seaweed-gl", {pair_tok}), opt, out);
    }
    if (app.got_subcommand(c_index))
      return cmd_index(parse_problem(kind_tok, params), opt, out, err);
    if (app.got_subcommand(c_mrs))
      return cmd_mrs(parse_problem(kind_tok, params), opt, out, err);
    if (app.got_subcommand(c_cascade)) return cmd_cascade(type_tok, params, opt, out);
    if (app.got_subcommand(c_verify))
      return cmd_verify(parse_problem(kind_tok, params), opt, out);
    if (app.got_subcommand(c_sweep)) {
      if (!c_sweep->count("--verify")) opt.verify_level = "fast";
      return cmd_sweep(kind_tok, params, opt, out);
    }
  } catch (const classical::NotQuasiReductive& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const exceptional::NotCovered& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 64;
}

}  // namespace mrstab::cli
