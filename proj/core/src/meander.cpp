#include "mrstab/meander.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mrstab::meander {

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

void Composition::validate() const {
  if (parts.empty()) throw std::invalid_argument("composition must have at least one part");
  for (int p : parts)
    if (p < 1) throw std::invalid_argument("composition parts must be positive");
}

std::string Composition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s;
}

namespace {

std::vector<std::pair<int, int>> block_edges(const Composition& c) {
  std::vector<std::pair<int, int>> edges;
  int s = 0;
  for (int p : c.parts) {
    for (int i = 1; 2 * i <= p; ++i) edges.emplace_back(s + i, s + p + 1 - i);
    s += p;
  }
  return edges;
}

}  // namespace

MeanderGraph build_meander(const Composition& a, const Composition& b) {
  a.validate();
  b.validate();
  if (a.total() != b.total())
    throw std::invalid_argument("compositions " + a.to_string() + " and " + b.to_string() +
                                " have different totals");
  MeanderGraph g;
  g.n = a.total();
  g.a_edges = block_edges(a);
  g.b_edges = block_edges(b);

  // Partner maps: each vertex has at most one edge of either kind.
  std::vector<int> a_partner(g.n + 1, 0), b_partner(g.n + 1, 0);
  for (auto [u, v] : g.a_edges) {
    a_partner[u] = v;
    a_partner[v] = u;
  }
  for (auto [u, v] : g.b_edges) {
    b_partner[u] = v;
    b_partner[v] = u;
  }

  // Components by edge-following.
  std::vector<bool> seen(g.n + 1, false);
  for (int start = 1; start <= g.n; ++start) {
    if (seen[start]) continue;
    std::vector<int> verts;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = true;
      verts.push_back(v);
      if (a_partner[v] && !seen[a_partner[v]]) stack.push_back(a_partner[v]);
      if (b_partner[v] && !seen[b_partner[v]]) stack.push_back(b_partner[v]);
    }
    Component c;
    c.vertices = verts;
    std::sort(c.vertices.begin(), c.vertices.end(), std::greater<int>());
    const bool all_degree_two = std::all_of(verts.begin(), verts.end(), [&](int v) {
      return a_partner[v] != 0 && b_partner[v] != 0;
    });
    c.kind = all_degree_two ? Component::Kind::Cycle : Component::Kind::Segment;
    if (c.is_cycle() && c.vertices.size() % 2 != 0)
      throw std::logic_error("cycle with an odd number of vertices");
    g.components.push_back(std::move(c));
  }
  std::sort(g.components.begin(), g.components.end(),
            [](const Component& x, const Component& y) {
              return x.vertices.back() < y.vertices.back();
            });
  for (Component& c : g.components) {
    c.dimension = cycle_dimension(g, c);
    c.maximal = true;
  }
  for (Component& c : g.components)
    for (const Component& y : g.components)
      if (is_inside(c, y)) c.maximal = false;
  return g;
}

bool is_inside(const Component& x, const Component& y) {
  if (!y.is_cycle()) return false;  // segments contain nothing
  const int x1 = x.top();
  for (std::size_t i = 0; i + 1 < y.vertices.size(); i += 2) {
    const int hi = y.vertices[i];      // y_{2i-1} in 1-based notation
    const int lo = y.vertices[i + 1];  // y_{2i}
    if (lo < x1 && x1 < hi) return true;
  }
  return false;
}

std::vector<Component> maximal_components(const MeanderGraph& g) {
  std::vector<Component> out;
  for (const Component& c : g.components) {
    bool nested = false;
    for (const Component& y : g.components)
      if (is_inside(c, y)) nested = true;
    if (!nested) out.push_back(c);
  }
  return out;
}

int cycle_dimension(const MeanderGraph& g, const Component& y) {
  if (!y.is_cycle()) return 1;
  int cycles_inside = 0, segments_inside = 0;
  for (const Component& x : g.components) {
    if (!is_inside(x, y)) continue;
    (x.is_cycle() ? cycles_inside : segments_inside) += 1;
  }
  const int by_nesting = 2 * cycles_inside + segments_inside + 2;
  const int by_gap = y.vertices[0] - y.vertices[1] + 1;
  if (by_nesting != by_gap)
    throw std::logic_error("cycle dimension formulas disagree: nesting gives " +
                           std::to_string(by_nesting) + ", gap gives " + std::to_string(by_gap));
  return by_nesting;
}

int seaweed_index(const Composition& a, const Composition& b) {
  const MeanderGraph g = build_meander(a, b);
  int by_maximal = 0;
  for (const Component& c : maximal_components(g)) by_maximal += c.dimension;
  int cycles = 0, segments = 0;
  for (const Component& c : g.components) (c.is_cycle() ? cycles : segments) += 1;
  const int by_count = 2 * cycles + segments;
  if (by_maximal != by_count)
    throw std::logic_error("index formulas disagree on q(" + a.to_string() + "|" +
                           b.to_string() + "): " + std::to_string(by_maximal) + " vs " +
                           std::to_string(by_count));
  return by_maximal;
}

GlMrsDescriptor mrs_gl(const Composition& a, const Composition& b) {
  const MeanderGraph g = build_meander(a, b);
  GlMrsDescriptor d;
  for (const Component& c : maximal_components(g)) {
    GlMrsFactor f;
    f.rank = c.dimension;
    if (c.is_cycle() && c.dimension > 1) {
      // Pairs (y_{2i}, y_{2i-1}) of the descending vertex list bound the
      // intervals; all gaps are equal to rank - 1.
      for (std::size_t i = 0; i + 1 < c.vertices.size(); i += 2) {
        const int hi = c.vertices[i], lo = c.vertices[i + 1];
        if (hi - lo + 1 != f.rank)
          throw std::logic_error("unequal interval gap in a maximal cycle");
        f.intervals.emplace_back(lo, hi);
      }
      std::sort(f.intervals.begin(), f.intervals.end());
    } else {
      f.scalar_positions.assign(c.vertices.rbegin(), c.vertices.rend());
    }
    d.factors.push_back(std::move(f));
  }
  std::sort(d.factors.begin(), d.factors.end(), [](const GlMrsFactor& x, const GlMrsFactor& y) {
    const int xmin = x.intervals.empty() ? x.scalar_positions.front() : x.intervals.front().first;
    const int ymin = y.intervals.empty() ? y.scalar_positions.front() : y.intervals.front().first;
    return xmin < ymin;
  });
  return d;
}

ReduceStep reduce_step(const Composition& a_in, const Composition& b_in) {
  a_in.validate();
  b_in.validate();
  if (a_in.total() != b_in.total()) throw std::invalid_argument("composition totals differ");

  ReduceStep step;
  Composition a = a_in, b = b_in;
  if (a.parts[0] > b.parts[0]) {
    std::swap(a, b);
    step.swapped = true;
  }
  const int a1 = a.parts[0], b1 = b.parts[0];
  if (a1 == b1) {
    step.move = ReduceStep::Move::Split;
    step.split_rank = a1;
    step.a.parts.assign(a.parts.begin() + 1, a.parts.end());
    step.b.parts.assign(b.parts.begin() + 1, b.parts.end());
  } else if (2 * a1 <= b1) {
    step.move = ReduceStep::Move::Shrink;
    step.a.parts.assign(a.parts.begin() + 1, a.parts.end());
    if (b1 - 2 * a1 > 0) step.b.parts.push_back(b1 - 2 * a1);
    step.b.parts.push_back(a1);
    step.b.parts.insert(step.b.parts.end(), b.parts.begin() + 1, b.parts.end());
  } else {
    step.move = ReduceStep::Move::Fold;
    step.a.parts.push_back(2 * a1 - b1);
    step.a.parts.insert(step.a.parts.end(), a.parts.begin() + 1, a.parts.end());
    step.b.parts.push_back(a1);
    step.b.parts.insert(step.b.parts.end(), b.parts.begin() + 1, b.parts.end());
  }
  return step;
}

GlMrsDescriptor mrs_gl_via_reduction(const Composition& a_in, const Composition& b_in) {
  GlMrsDescriptor d;
  Composition a = a_in, b = b_in;
  while (!a.empty() || !b.empty()) {
    if (a.empty() != b.empty())
      throw std::logic_error("reduction left one composition empty but not the other");
    const ReduceStep step = reduce_step(a, b);
    if (step.move == ReduceStep::Move::Split) {
      GlMrsFactor f;
      f.rank = step.split_rank;
      d.factors.push_back(f);
    }
    a = step.a;
    b = step.b;
  }
  std::sort(d.factors.begin(), d.factors.end(),
            [](const GlMrsFactor& x, const GlMrsFactor& y) { return x.rank < y.rank; });
  return d;
}

}  // namespace mrstab::meander
