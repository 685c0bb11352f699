#include "mrstab/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace mrstab::roots {

void SimpleType::validate() const {
  const int l = rank;
  bool ok = false;
  switch (family) {
    case Family::A: ok = l >= 1; break;
    case Family::B: ok = l >= 2; break;
    case Family::C: ok = l >= 3; break;
    case Family::D: ok = l >= 4; break;
    case Family::E: ok = l == 6 || l == 7 || l == 8; break;
    case Family::F: ok = l == 4; break;
    case Family::G: ok = l == 2; break;
  }
  if (!ok)
    throw std::invalid_argument("invalid simple type " + to_string());
}

std::string SimpleType::to_string() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

namespace {

// Integer Gram matrix (a_i, a_j) of the simple roots, normalized so that
// short roots have square length 2.
std::vector<std::vector<long>> make_gram(SimpleType t) {
  const int l = t.rank;
  std::vector<std::vector<long>> g(l, std::vector<long>(l, 0));
  auto edge = [&](int i, int j, long v) {
    g[i - 1][j - 1] = v;
    g[j - 1][i - 1] = v;
  };
  auto diag = [&](int i, long v) { g[i - 1][i - 1] = v; };

  switch (t.family) {
    case Family::A:
      for (int i = 1; i <= l; ++i) diag(i, 2);
      for (int i = 1; i < l; ++i) edge(i, i + 1, -1);
      break;
    case Family::B:
      // Long chain a1..a_{l-1}, short terminal root a_l.
      for (int i = 1; i < l; ++i) diag(i, 4);
      diag(l, 2);
      for (int i = 1; i < l; ++i) edge(i, i + 1, -2);
      break;
    case Family::C:
      // Short chain a1..a_{l-1}, long terminal root a_l.
      for (int i = 1; i < l; ++i) diag(i, 2);
      diag(l, 4);
      for (int i = 1; i + 1 < l; ++i) edge(i, i + 1, -1);
      edge(l - 1, l, -2);
      break;
    case Family::D:
      for (int i = 1; i <= l; ++i) diag(i, 2);
      for (int i = 1; i + 2 <= l - 1; ++i) edge(i, i + 1, -1);
      edge(l - 2, l - 1, -1);
      edge(l - 2, l, -1);
      break;
    case Family::E: {
      for (int i = 1; i <= l; ++i) diag(i, 2);
      const int chain = l - 1;          // a1..a_{l-1} form a chain
      for (int i = 1; i < chain; ++i) edge(i, i + 1, -1);
      const int branch_at = (l == 6) ? 3 : (l == 7) ? 4 : 5;
      edge(branch_at, l, -1);
      break;
    }
    case Family::F:
      diag(1, 2); diag(2, 2); diag(3, 4); diag(4, 4);
      edge(1, 2, -1);
      edge(2, 3, -2);
      edge(3, 4, -2);
      break;
    case Family::G:
      diag(1, 2); diag(2, 6);
      edge(1, 2, -3);
      break;
  }
  return g;
}

}  // namespace

RootSystem::RootSystem(SimpleType type) : type_(type) {
  type_.validate();
  gram_ = make_gram(type_);
  const int l = type_.rank;

  // Enumerate positive roots by repeatedly extending root strings: b + a_i is
  // a root iff p - <b, a_i^vee> > 0 where p is the depth of the string below b.
  std::set<RootVector> pos;
  std::vector<RootVector> frontier;
  for (int i = 0; i < l; ++i) {
    RootVector e(l, 0);
    e[i] = 1;
    pos.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<RootVector> next;
    for (const RootVector& b : frontier) {
      for (int i = 0; i < l; ++i) {
        long num = 0;
        for (int j = 0; j < l; ++j) num += b[j] * gram_[j][i];
        const long cart = 2 * num / gram_[i][i];  // <b, a_i^vee>
        int p = 0;
        RootVector down = b;
        while (true) {
          down[i] -= 1;
          bool zero = std::all_of(down.begin(), down.end(), [](int x) { return x == 0; });
          if (zero || !pos.count(down)) break;
          ++p;
        }
        if (p - cart > 0) {
          RootVector up = b;
          up[i] += 1;
          if (pos.insert(up).second) next.push_back(up);
        }
      }
    }
    frontier = std::move(next);
  }

  positive_.assign(pos.begin(), pos.end());
  std::sort(positive_.begin(), positive_.end(),
            [this](const RootVector& a, const RootVector& b) {
              const int ha = std::accumulate(a.begin(), a.end(), 0);
              const int hb = std::accumulate(b.begin(), b.end(), 0);
              return ha != hb ? ha < hb : a < b;
            });
  for (const RootVector& r : positive_) {
    all_roots_.insert(r);
    RootVector neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    all_roots_.insert(neg);
  }
}

long RootSystem::pairing(const RootVector& u, const RootVector& v) const {
  long s = 0;
  for (int i = 0; i < type_.rank; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < type_.rank; ++j) s += static_cast<long>(u[i]) * v[j] * gram_[i][j];
  }
  return s;
}

bool RootSystem::is_root(const RootVector& v) const { return all_roots_.count(v) > 0; }

std::set<int> RootSystem::support(const RootVector& v) {
  std::set<int> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.insert(static_cast<int>(i) + 1);
  return s;
}

int RootSystem::height(const RootVector& v) const {
  return std::accumulate(v.begin(), v.end(), 0);
}

RootVector RootSystem::highest_root(const std::set<int>& pi) const {
  if (pi.empty()) throw std::invalid_argument("highest root of empty subset");
  if (connected_components(pi).size() != 1)
    throw std::invalid_argument("highest root requires a connected subset");
  const RootVector* best = nullptr;
  for (const RootVector& r : positive_) {
    const std::set<int> sup = support(r);
    if (!std::includes(pi.begin(), pi.end(), sup.begin(), sup.end())) continue;
    if (!best || height(r) > height(*best)) best = &r;
  }
  // For a connected subset the subsystem is irreducible, so the root of
  // maximal height dominates every other root of the subsystem.
  for (const RootVector& r : positive_) {
    const std::set<int> sup = support(r);
    if (!std::includes(pi.begin(), pi.end(), sup.begin(), sup.end())) continue;
    for (int i = 0; i < type_.rank; ++i)
      if (r[i] > (*best)[i])
        throw std::logic_error("highest root is not dominant within the subset");
  }
  return *best;
}

RootVector RootSystem::highest_root() const { return highest_root(full_subset()); }

bool RootSystem::is_orthogonal(const RootVector& u, const RootVector& v) const {
  return pairing(u, v) == 0;
}

bool RootSystem::is_strongly_orthogonal(const RootVector& u, const RootVector& v) const {
  RootVector sum(u.size()), diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum[i] = u[i] + v[i];
    diff[i] = u[i] - v[i];
  }
  return !is_root(sum) && !is_root(diff);
}

std::vector<std::set<int>> RootSystem::connected_components(const std::set<int>& pi) const {
  std::vector<std::set<int>> comps;
  std::set<int> seen;
  for (int start : pi) {
    if (seen.count(start)) continue;
    std::set<int> comp;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (!comp.insert(v).second) continue;
      for (int w : pi)
        if (w != v && gram_[v - 1][w - 1] != 0 && !comp.count(w)) stack.push_back(w);
    }
    seen.insert(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::set<int> RootSystem::full_subset() const {
  std::set<int> s;
  for (int i = 1; i <= type_.rank; ++i) s.insert(i);
  return s;
}

// ---------------------------------------------------------------------------
// Subdiagram classification
// ---------------------------------------------------------------------------

ClassifiedSubdiagram classify_connected_subset(const RootSystem& rs, const std::set<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("cannot classify an empty subset");
  if (rs.connected_components(subset).size() != 1)
    throw std::invalid_argument("cannot classify a disconnected subset");

  const std::vector<int> nodes(subset.begin(), subset.end());
  const int n = static_cast<int>(nodes.size());
  if (n == 1) return {{Family::A, 1}, {nodes[0]}};

  // Bond multiplicity between two adjacent nodes: product of the two Cartan
  // integers, i.e. 1, 2 or 3.
  auto mult = [&](int i, int j) -> long {
    const long gij = rs.gram(i, j);
    if (gij == 0) return 0;
    return (2 * gij / rs.gram(i, i)) * (2 * gij / rs.gram(j, j));
  };
  auto neighbours = [&](int i) {
    std::vector<int> nb;
    for (int j : nodes)
      if (j != i && rs.gram(i, j) != 0) nb.push_back(j);
    return nb;
  };
  // Walk a chain away from `from`, starting at `first`, collecting nodes.
  auto walk = [&](int from, int first) {
    std::vector<int> arm{first};
    int prev = from, cur = first;
    while (true) {
      const std::vector<int> nb = neighbours(cur);
      int next = 0;
      for (int x : nb)
        if (x != prev) next = x;
      if (next == 0) break;
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    return arm;
  };

  long max_mult = 0;
  for (int i : nodes)
    for (int j : nodes)
      if (i < j) max_mult = std::max(max_mult, mult(i, j));

  if (max_mult == 3) {
    if (n != 2) throw std::logic_error("triple bond in a diagram of size > 2");
    const bool first_short = rs.gram(nodes[0], nodes[0]) < rs.gram(nodes[1], nodes[1]);
    const int s = first_short ? nodes[0] : nodes[1];
    const int l = first_short ? nodes[1] : nodes[0];
    return {{Family::G, 2}, {s, l}};
  }

  if (max_mult == 2) {
    // B, C or F4. All such diagrams are chains; find the two ends.
    std::vector<int> ends;
    for (int i : nodes)
      if (neighbours(i).size() == 1) ends.push_back(i);
    if (ends.size() != 2) throw std::logic_error("double bond in a branched diagram");
    std::vector<int> chain = walk(0, ends[0]);
    if (static_cast<int>(chain.size()) != n) throw std::logic_error("diagram is not a chain");

    const long len_front = rs.gram(chain.front(), chain.front());
    const long len_back = rs.gram(chain.back(), chain.back());
    int n_short = 0;
    for (int i : nodes)
      if (rs.gram(i, i) == 2) ++n_short;

    if (n == 2) {
      // An isolated double bond; report it as B2 with the long node first.
      if (len_front < len_back) std::reverse(chain.begin(), chain.end());
      return {{Family::B, 2}, chain};
    }
    if (n_short >= 2 && n - n_short >= 2) {
      if (n != 4) throw std::logic_error("unexpected diagram with interior double bond");
      // F4 in the short-chain-first convention.
      if (len_front > len_back) std::reverse(chain.begin(), chain.end());
      return {{Family::F, 4}, chain};
    }
    if (n_short == 1) {
      // B_l: long chain, short terminal node last.
      if (len_front < len_back) std::reverse(chain.begin(), chain.end());
      return {{Family::B, n}, chain};
    }
    // C_l: short chain, long terminal node last.
    if (len_front > len_back) std::reverse(chain.begin(), chain.end());
    return {{Family::C, n}, chain};
  }

  // Simply laced: A, D or E.
  std::vector<int> branch_nodes;
  for (int i : nodes)
    if (neighbours(i).size() >= 3) branch_nodes.push_back(i);
  if (branch_nodes.size() > 1) throw std::logic_error("more than one branch node");

  if (branch_nodes.empty()) {
    std::vector<int> ends;
    for (int i : nodes)
      if (neighbours(i).size() == 1) ends.push_back(i);
    std::sort(ends.begin(), ends.end());
    std::vector<int> chain = walk(0, ends[0]);
    return {{Family::A, n}, chain};
  }

  const int b = branch_nodes[0];
  std::vector<std::vector<int>> arms;
  for (int x : neighbours(b)) arms.push_back(walk(b, x));
  if (arms.size() != 3) throw std::logic_error("branch node of degree > 3");
  std::sort(arms.begin(), arms.end(), [](const auto& u, const auto& v) {
    return u.size() != v.size() ? u.size() < v.size() : u.front() < v.front();
  });
  const std::size_t l1 = arms[0].size(), l2 = arms[1].size(), l3 = arms[2].size();

  if (l1 == 1 && l2 == 1) {
    // D_n: the long arm read inward, then the branch node, then the fork.
    std::vector<int> order(arms[2].rbegin(), arms[2].rend());
    order.push_back(b);
    std::vector<int> fork{arms[0][0], arms[1][0]};
    std::sort(fork.begin(), fork.end());
    order.insert(order.end(), fork.begin(), fork.end());
    return {{Family::D, n}, order};
  }
  if (l1 == 1 && l2 == 2 && l3 >= 2 && l3 <= 4) {
    // E_n: longest arm inward, branch node, two-arm outward, one-arm.
    std::vector<int> order(arms[2].rbegin(), arms[2].rend());
    order.push_back(b);
    order.insert(order.end(), arms[1].begin(), arms[1].end());
    order.push_back(arms[0][0]);
    return {{Family::E, n}, order};
  }
  throw std::logic_error("subset is not a diagram of finite type");
}

// ---------------------------------------------------------------------------
// Highest-root reduction data
// ---------------------------------------------------------------------------

ThetaReduction theta_tilde(const RootSystem& rs) {
  const RootVector theta = rs.highest_root();
  std::vector<int> attached;
  for (int i = 1; i <= rs.rank(); ++i) {
    RootVector e(rs.rank(), 0);
    e[i - 1] = 1;
    if (!rs.is_orthogonal(theta, e)) attached.push_back(i);
  }
  if (attached.size() != 1)
    throw std::invalid_argument(
        "the highest root is not attached to a unique simple root in type " +
        rs.type().to_string());

  ThetaReduction red;
  red.alpha_tilde = attached[0];
  red.pi_tilde = rs.full_subset();
  red.pi_tilde.erase(red.alpha_tilde);
  if (!red.pi_tilde.empty() && rs.connected_components(red.pi_tilde).size() == 1)
    red.reduced = classify_connected_subset(rs, red.pi_tilde);
  return red;
}

// ---------------------------------------------------------------------------
// Diagram automorphisms
// ---------------------------------------------------------------------------

namespace {

// Each automorphism is a permutation p with p[i-1] = image of node i.
std::vector<std::vector<int>> automorphism_group(SimpleType t) {
  const int l = t.rank;
  std::vector<int> id(l);
  for (int i = 0; i < l; ++i) id[i] = i + 1;
  std::vector<std::vector<int>> group{id};

  switch (t.family) {
    case Family::A:
      if (l >= 2) {
        std::vector<int> rev(l);
        for (int i = 0; i < l; ++i) rev[i] = l - i;
        group.push_back(rev);
      }
      break;
    case Family::D:
      if (l == 4) {
        // The full S3 on the three outer nodes {1, 3, 4}.
        std::vector<int> outer{1, 3, 4};
        std::sort(outer.begin(), outer.end());
        std::vector<std::vector<int>> perms;
        std::vector<int> p = outer;
        do {
          std::vector<int> g(l);
          g[1] = 2;
          g[0] = p[0];
          g[2] = p[1];
          g[3] = p[2];
          perms.push_back(g);
        } while (std::next_permutation(p.begin(), p.end()));
        group = perms;
      } else {
        std::vector<int> swap_fork = id;
        std::swap(swap_fork[l - 2], swap_fork[l - 1]);
        group.push_back(swap_fork);
      }
      break;
    case Family::E:
      if (l == 6) {
        std::vector<int> s = id;
        std::swap(s[0], s[4]);  // a1 <-> a5
        std::swap(s[1], s[3]);  // a2 <-> a4
        group.push_back(s);
      }
      break;
    default:
      break;
  }
  return group;
}

}  // namespace

std::vector<std::set<int>> diagram_automorphism_orbit(const RootSystem& rs,
                                                      const std::set<int>& pi) {
  std::vector<std::set<int>> orbit;
  for (const std::vector<int>& g : automorphism_group(rs.type())) {
    std::set<int> image;
    for (int i : pi) image.insert(g[i - 1]);
    if (std::find(orbit.begin(), orbit.end(), image) == orbit.end())
      orbit.push_back(std::move(image));
  }
  return orbit;
}

std::set<int> normalize_by_diagram_automorphism(const RootSystem& rs, const std::set<int>& pi) {
  std::set<int> best = pi;
  auto lex_less = [](const std::set<int>& a, const std::set<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  for (const std::set<int>& image : diagram_automorphism_orbit(rs, pi))
    if (lex_less(image, best)) best = image;
  return best;
}

}  // namespace mrstab::roots
