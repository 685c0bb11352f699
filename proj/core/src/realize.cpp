#include "mrstab/realize.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace mrstab::realize {

using classical::IsoParabolic;
using linalg::Subspace;
using meander::Composition;

namespace {

// Block index (1-based) of position i under a composition.
std::vector<int> block_index_table(const Composition& c) {
  std::vector<int> blk(c.total() + 1, 0);
  int pos = 1, b = 1;
  for (int part : c.parts) {
    for (int k = 0; k < part; ++k) blk[pos++] = b;
    ++b;
  }
  return blk;
}

std::vector<linalg::RatVector> flatten_all(const std::vector<RatMatrix>& basis) {
  std::vector<linalg::RatVector> rows;
  rows.reserve(basis.size());
  for (const RatMatrix& m : basis) rows.push_back(m.flatten());
  return rows;
}

// Raw basis of the isometry algebra {X : X^T S + S X = 0} for the
// anti-diagonal form of sign `epsilon`, without the construction checks.
// The defining relation couples the entry (i, j) with (n+1-j, n+1-i):
//   X_{n+1-j, n+1-i} = -eps(i) eps(j) X_{ij},
// where eps is identically 1 for epsilon = +1 and the half-space sign for
// epsilon = -1. Anti-diagonal positions are self-coupled: they vanish in the
// orthogonal case and are free in the symplectic case.
std::vector<RatMatrix> iso_basis(int epsilon, int n) {
  auto eps = [&](int i) { return epsilon == -1 && i > n / 2 ? -1 : 1; };
  std::vector<RatMatrix> basis;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int pi = n + 1 - j, pj = n + 1 - i;
      if (i + j == n + 1) {
        if (epsilon == -1) basis.push_back(elementary(n, i, j));
        continue;
      }
      if (std::make_pair(i, j) > std::make_pair(pi, pj)) continue;  // partner emits it
      RatMatrix m = elementary(n, i, j);
      m.at(pi - 1, pj - 1) = Rat(-eps(i) * eps(j));
      basis.push_back(std::move(m));
    }
  }
  return basis;
}

// True when E_uv maps every flag space span(e_1..e_f), f a partial sum of a,
// into itself.
bool stabilises_flag(const std::vector<int>& partial_sums, int u, int v) {
  for (int f : partial_sums)
    if (u > f && f >= v) return false;
  return true;
}

std::vector<int> proper_partial_sums(const Composition& a) {
  std::vector<int> sums;
  int s = 0;
  for (int part : a.parts) {
    s += part;
    sums.push_back(s);
  }
  return sums;
}

// Shifts a local d x d matrix to ambient size n at diagonal offset `off`
// (local row/col k lands at off + k).
RatMatrix shift_block(const RatMatrix& local, int n, int off) {
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < local.rows(); ++i)
    for (std::size_t j = 0; j < local.cols(); ++j)
      if (local.at(i, j) != 0) out.at(off + i, off + j) = local.at(i, j);
  return out;
}

// Completes a matrix supported in the first half (rows and columns <= n/2
// rounded down, guaranteed by the callers' block layout) to a member of the
// ambient isometry algebra by adding the forced mirrored entries. On the
// first half eps is identically +1 for either sign of the form, so the
// mirror rule is the same: entry (u, v) forces -value at (n+1-v, n+1-u).
RatMatrix iso_complete(int n, const RatMatrix& x) {
  RatMatrix out = x;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (x.at(u, v) != 0) out.at(n - 1 - v, n - 1 - u) = -x.at(u, v);
  return out;
}

// Appends the block summands of the distinguished reductive subalgebra over
// Levi blocks 1..s of an orthogonal flag parabolic: a full-block symplectic
// algebra on even blocks, and on the disjointly paired odd blocks the
// symplectic algebra of the first a-1 lines.
void append_so_levi_summands(const IsoParabolic& p, int s, std::vector<RatMatrix>* out) {
  const int n = p.n;
  int off = 0, pending = -1;
  for (int i = 0; i < s; ++i) {
    const int a = p.a.parts[i];
    if (a % 2 == 0) {
      if (pending >= 0) throw std::logic_error("even block inside an odd run");
      for (const RatMatrix& loc : iso_basis(-1, a))
        out->push_back(iso_complete(n, shift_block(loc, n, off)));
    } else if (pending >= 0) {
      for (int source : {pending, i}) {
        int boff = 0;
        for (int k = 0; k < source; ++k) boff += p.a.parts[k];
        for (const RatMatrix& loc : iso_basis(-1, p.a.parts[source] - 1))
          out->push_back(iso_complete(n, shift_block(loc, n, boff)));
      }
      pending = -1;
    } else {
      pending = i;
    }
    off += a;
  }
  if (pending >= 0) throw std::logic_error("unpaired odd block in the Levi summands");
}

}  // namespace

RatMatrix elementary(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("index out of range");
  RatMatrix m(n, n);
  m.at(i - 1, j - 1) = 1;
  return m;
}

RatMatrix iso_form_matrix(int epsilon, int n) {
  if (epsilon != +1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  if (epsilon == -1 && n % 2 != 0)
    throw std::invalid_argument("symplectic form needs even dimension");
  RatMatrix s(n, n);
  for (int i = 1; i <= n; ++i)
    s.at(i - 1, n - i) = Rat(epsilon == -1 && i > n / 2 ? -1 : 1);
  return s;
}

namespace {

// The (row, col) of the only nonzero entry, when there is exactly one.
std::optional<std::pair<int, int>> single_entry(const RatMatrix& m) {
  std::optional<std::pair<int, int>> found;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) {
        if (found) return std::nullopt;
        found = {static_cast<int>(i), static_cast<int>(j)};
      }
  return found;
}

}  // namespace

MatrixLieAlgebra make_algebra(int n, std::vector<RatMatrix> basis, std::string name) {
  for (const RatMatrix& m : basis)
    if (static_cast<int>(m.rows()) != n || static_cast<int>(m.cols()) != n)
      throw std::invalid_argument(name + ": basis matrix of wrong size");

  // When every basis matrix is a scaled elementary matrix, independence is a
  // distinctness question and closure follows from
  // [E_ij, E_kl] = d_jk E_il - d_li E_kj entry-by-entry on the position set.
  std::vector<std::pair<int, int>> pos;
  pos.reserve(basis.size());
  for (const RatMatrix& m : basis) {
    const auto p = single_entry(m);
    if (!p) break;
    pos.push_back(*p);
  }
  if (pos.size() == basis.size()) {
    const std::set<std::pair<int, int>> set(pos.begin(), pos.end());
    if (set.size() != basis.size())
      throw std::invalid_argument(name + ": basis is linearly dependent");
    const auto has = [&](int i, int j) { return set.count({i, j}) > 0; };
    for (const auto& [i, j] : pos)
      for (const auto& [k, l] : pos) {
        bool ok = true;
        if (j == k && i == l)
          ok = i == j || (has(i, i) && has(j, j));
        else if (j == k)
          ok = has(i, l);
        else if (l == i)
          ok = has(k, j);
        if (!ok) throw std::invalid_argument(name + ": not closed under the commutator");
      }
    return MatrixLieAlgebra{n, std::move(basis), std::move(name)};
  }

  const Subspace span = Subspace::span(static_cast<std::size_t>(n) * n, flatten_all(basis));
  if (span.dim() != basis.size())
    throw std::invalid_argument(name + ": basis is linearly dependent");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!span.contains(linalg::bracket(basis[i], basis[j]).flatten()))
        throw std::invalid_argument(name + ": not closed under the commutator");
  return MatrixLieAlgebra{n, std::move(basis), std::move(name)};
}

bool in_span(const std::vector<RatMatrix>& basis, const RatMatrix& x) {
  if (basis.empty()) return x.is_zero();
  const std::size_t amb = x.rows() * x.cols();
  return Subspace::span(amb, flatten_all(basis)).contains(x.flatten());
}

bool is_contained(const MatrixLieAlgebra& sub, const MatrixLieAlgebra& ambient) {
  if (sub.n != ambient.n) return false;
  const std::size_t amb = static_cast<std::size_t>(ambient.n) * ambient.n;
  const Subspace span = Subspace::span(amb, flatten_all(ambient.basis));
  for (const RatMatrix& m : sub.basis)
    if (!span.contains(m.flatten())) return false;
  return true;
}

MatrixLieAlgebra build_gl(int n) {
  std::vector<RatMatrix> basis;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) basis.push_back(elementary(n, i, j));
  return make_algebra(n, std::move(basis), "gl_" + std::to_string(n));
}

MatrixLieAlgebra build_seaweed_gl(const Composition& a, const Composition& b) {
  a.validate();
  b.validate();
  if (a.total() != b.total())
    throw std::invalid_argument("compositions have different totals");
  const int n = a.total();
  const std::vector<int> blka = block_index_table(a), blkb = block_index_table(b);
  std::vector<RatMatrix> basis;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (blka[i] <= blka[j] && blkb[i] >= blkb[j]) basis.push_back(elementary(n, i, j));
  return make_algebra(n, std::move(basis),
                      "q(" + a.to_string() + "|" + b.to_string() + ")");
}

MatrixLieAlgebra build_iso_algebra(int epsilon, int n) {
  iso_form_matrix(epsilon, n);  // argument validation
  const std::string name = (epsilon == -1 ? "sp_" : "so_") + std::to_string(n);
  return make_algebra(n, iso_basis(epsilon, n), name);
}

MatrixLieAlgebra build_parabolic_iso(const IsoParabolic& p) {
  p.validate();
  const std::vector<int> sums = proper_partial_sums(p.a);
  std::vector<RatMatrix> basis;
  for (RatMatrix& m : iso_basis(p.epsilon, p.n)) {
    bool ok = true;
    for (int u = 0; u < p.n && ok; ++u)
      for (int v = 0; v < p.n && ok; ++v)
        if (m.at(u, v) != 0 && !stabilises_flag(sums, u + 1, v + 1)) ok = false;
    if (ok) basis.push_back(std::move(m));
  }
  return make_algebra(p.n, std::move(basis), p.to_string());
}

MatrixLieAlgebra embed_mrs_gl(const meander::GlMrsDescriptor& d, int n,
                              const GlEmbedOptions& opt) {
  if (!opt.flips.empty() && opt.flips.size() != d.factors.size())
    throw std::invalid_argument("one flip list per factor expected");
  std::set<int> covered;
  auto cover = [&](int v) {
    if (v < 1 || v > n) throw std::invalid_argument("factor interval outside 1..n");
    if (!covered.insert(v).second)
      throw std::invalid_argument("overlapping supports across factors");
  };
  std::vector<RatMatrix> basis;
  for (std::size_t fi = 0; fi < d.factors.size(); ++fi) {
    const meander::GlMrsFactor& f = d.factors[fi];
    if (f.rank == 1 || f.intervals.empty()) {
      RatMatrix m(n, n);
      for (int v : f.scalar_positions) {
        cover(v);
        m.at(v - 1, v - 1) = 1;
      }
      basis.push_back(std::move(m));
      continue;
    }
    const int r = f.rank;
    std::vector<bool> flips(f.intervals.size(), false);
    if (!opt.flips.empty()) {
      if (opt.flips[fi].size() != f.intervals.size())
        throw std::invalid_argument("one flip flag per interval expected");
      flips = opt.flips[fi];
    }
    for (const auto& [lo, hi] : f.intervals) {
      if (hi - lo + 1 != r) throw std::invalid_argument("interval length differs from rank");
      for (int v = lo; v <= hi; ++v) cover(v);
    }
    for (int k = 1; k <= r; ++k) {
      for (int l = 1; l <= r; ++l) {
        RatMatrix m(n, n);
        for (std::size_t c = 0; c < f.intervals.size(); ++c) {
          const int off = f.intervals[c].first - 1;
          const int kk = flips[c] ? r + 1 - k : k;
          const int ll = flips[c] ? r + 1 - l : l;
          m.at(off + kk - 1, off + ll - 1) = 1;
        }
        basis.push_back(std::move(m));
      }
    }
  }
  return make_algebra(n, std::move(basis), "mrs-gl embedding");
}

MatrixLieAlgebra embed_mrs_sp(const IsoParabolic& p) {
  p.validate();
  if (p.epsilon != -1) throw std::invalid_argument("expected a symplectic parabolic");
  const int n = p.n;
  std::vector<RatMatrix> basis;
  int off = 0;
  for (int a : p.a.parts) {
    // Orthogonal algebra of the anti-diagonal symmetric form on the block.
    for (const RatMatrix& loc : iso_basis(+1, a))
      basis.push_back(iso_complete(n, shift_block(loc, n, off)));
    off += a;
  }
  const int m = n - 2 * p.r();
  for (const RatMatrix& loc : iso_basis(-1, m))
    basis.push_back(shift_block(loc, n, p.r()));  // the central window is self-mirrored
  return make_algebra(n, std::move(basis), "mrs(" + p.to_string() + ")");
}

MatrixLieAlgebra embed_mrs_so(const IsoParabolic& p) {
  p.validate();
  if (p.epsilon != +1) throw std::invalid_argument("expected an orthogonal parabolic");
  if (!classical::is_quasi_reductive_so(p))
    throw classical::NotQuasiReductive(p.to_string() + " is not quasi-reductive");
  const int kase = classical::mrs_so_case(p);
  if (kase > 2)
    throw std::domain_error(
        "no block-wise embedding for the maximal-isotropic odd cases (3)-(5)");
  const int n = p.n, r = p.r(), m = n - 2 * r;
  const int t = static_cast<int>(p.a.parts.size());
  std::vector<RatMatrix> basis;
  if (kase == 1) {
    append_so_levi_summands(p, t, &basis);
    for (const RatMatrix& loc : iso_basis(+1, m))
      basis.push_back(shift_block(loc, n, r));
  } else {
    append_so_levi_summands(p, t - 1, &basis);
    const int at = p.a.parts[t - 1];
    for (const RatMatrix& loc : iso_basis(-1, at - 1))
      basis.push_back(iso_complete(n, shift_block(loc, n, r - at)));
    // Stabiliser of the anisotropic vector e_{r+1} + e_{n-r} inside the
    // central orthogonal window: kernel of the evaluation map X -> X v.
    const std::vector<RatMatrix> window = [&] {
      std::vector<RatMatrix> w;
      for (const RatMatrix& loc : iso_basis(+1, m)) w.push_back(shift_block(loc, n, r));
      return w;
    }();
    if (!window.empty()) {
      RatMatrix eval(n, window.size());
      for (std::size_t k = 0; k < window.size(); ++k)
        for (int u = 0; u < n; ++u)
          eval.at(u, k) = window[k].at(u, r) + window[k].at(u, n - r - 1);
      const Subspace ker = linalg::kernel_of(eval);
      for (const linalg::RatVector& c : ker.basis()) {
        RatMatrix x(n, n);
        for (std::size_t k = 0; k < window.size(); ++k)
          if (c[k] != 0) x = x + window[k] * c[k];
        basis.push_back(std::move(x));
      }
    }
  }
  return make_algebra(n, std::move(basis), "mrs(" + p.to_string() + ")");
}

std::string to_json(const MatrixLieAlgebra& L) {
  nlohmann::ordered_json j;
  j["n"] = L.n;
  j["name"] = L.name;
  j["dim"] = L.dim();
  nlohmann::ordered_json blist = nlohmann::ordered_json::array();
  for (const RatMatrix& m : L.basis) {
    nlohmann::ordered_json sparse = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t k = 0; k < m.cols(); ++k)
        if (m.at(i, k) != 0)
          sparse.push_back({i + 1, k + 1, m.at(i, k).get_num().get_str(),
                            m.at(i, k).get_den().get_str()});
    blist.push_back(std::move(sparse));
  }
  j["basis"] = std::move(blist);
  return j.dump(2);
}

}  // namespace mrstab::realize
