#include "mrstab/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

namespace mrstab::oracle {

using linalg::RatVector;

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

long draw(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<long> d(-range, range);
  return d(rng);
}

// ---------------------------------------------------------------------------
// Per-algebra scratch data reused across samples: transposed basis and the
// table of pairwise commutators.
// ---------------------------------------------------------------------------
struct AlgebraTable {
  const MatrixLieAlgebra* q;
  std::vector<RatMatrix> transposed;
  std::vector<std::vector<RatMatrix>> bracket;  // strictly upper: [i][j - i - 1]

  explicit AlgebraTable(const MatrixLieAlgebra& alg) : q(&alg) {
    const std::size_t d = alg.basis.size();
    transposed.reserve(d);
    for (const RatMatrix& b : alg.basis) transposed.push_back(b.transpose());
    bracket.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      bracket[i].reserve(d - i - 1);
      for (std::size_t j = i + 1; j < d; ++j)
        bracket[i].push_back(linalg::bracket(alg.basis[i], alg.basis[j]));
    }
  }

  // A random integral element of the span of the transposed basis; such
  // representatives are already canonical.
  RatMatrix sample_rep(std::mt19937_64& rng, int range) const {
    RatMatrix y(q->n, q->n);
    for (std::size_t i = 0; i < transposed.size(); ++i) {
      const long c = draw(rng, range);
      if (c != 0) y = y + transposed[i] * Rat(c);
    }
    return y;
  }

  RatMatrix contraction(const RatMatrix& y) const {
    const std::size_t d = q->basis.size();
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        const Rat v = linalg::trace_product(bracket[i][j - i - 1], y);
        m.at(i, j) = v;
        m.at(j, i) = -v;
      }
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Fraction-free integer rank (Bareiss), after clearing each row's
// denominators; row scaling does not change the rank.
// ---------------------------------------------------------------------------
int rank_bareiss(const RatMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_class scaled = m.at(i, j).get_num() * (lcm / m.at(i, j).get_den());
      a[i][j] = std::move(scaled);
    }
  }
  mpz_class prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class num = a[r][c] * a[row][col] - a[r][col] * a[row][c];
        mpz_divexact(a[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  return static_cast<int>(row);
}

MatrixLieAlgebra lift_kernel(const MatrixLieAlgebra& q, const Subspace& ker,
                             const std::string& name) {
  std::vector<RatMatrix> basis;
  for (const RatVector& c : ker.basis()) {
    RatMatrix x(q.n, q.n);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) x = x + q.basis[i] * c[i];
    basis.push_back(std::move(x));
  }
  return realize::make_algebra(q.n, std::move(basis), name);
}

Rat flat_trace_form(const RatVector& u, const RatVector& v, int n) {
  Rat s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += u[i * n + j] * v[j * n + i];
  return s;
}

// Gram matrix of the basis under tr(x y).
RatMatrix trace_gram(const std::vector<RatMatrix>& basis) {
  const std::size_t d = basis.size();
  RatMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      g.at(i, j) = linalg::trace_product(basis[i], basis[j]);
      g.at(j, i) = g.at(i, j);
    }
  return g;
}

bool trace_form_nondegenerate(const std::vector<RatMatrix>& basis) {
  return rank_bareiss(trace_gram(basis)) == static_cast<int>(basis.size());
}

// Solves A x = b by Gaussian elimination (A square or not); empty when
// inconsistent or underdetermined solutions are resolved to one solution
// with free variables set to zero.
std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<RatVector> work(rows, RatVector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) work[i][j] = a.at(i, j);
    work[i][cols] = b[i];
  }
  const std::vector<std::size_t> pivots = linalg::rref(work);
  RatVector x(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;  // 0 = 1 row: inconsistent
    x[pivots[r]] = work[r][cols];
  }
  return x;
}

// Index computation that also reports the best sampled representative.
struct IndexSample {
  int index = 0;
  RatMatrix best_rep;
};

IndexSample index_with_witness(const AlgebraTable& table, const Sampler& s,
                               const std::string& op) {
  const MatrixLieAlgebra& q = *table.q;
  const int d = q.dim();
  IndexSample out;
  out.index = d;
  out.best_rep = RatMatrix(q.n, q.n);
  if (d == 0) return out;
  std::mt19937_64 rng = s.engine(op);
  for (int k = 0; k < 5; ++k) {
    const RatMatrix y = table.sample_rep(rng, s.coefficient_range);
    const int dim_stab = d - rank_bareiss(table.contraction(y));
    if (dim_stab < out.index) {
      out.index = dim_stab;
      out.best_rep = y;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial helpers over Q, little-endian coefficients, no trailing zeros.
// ---------------------------------------------------------------------------
using Poly = std::vector<Rat>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
  poly_trim(d);
  return d;
}

Poly poly_mod(Poly a, const Poly& b) {
  poly_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    poly_trim(a);
  }
  return a;
}

int poly_gcd_degree(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? -1 : static_cast<int>(a.size()) - 1;
}

// ---------------------------------------------------------------------------
// Incremental span with coordinate tracking: expresses new vectors as
// combinations of previously inserted generators.
// ---------------------------------------------------------------------------
class TrackedSpan {
 public:
  TrackedSpan(std::size_t ambient, std::size_t max_gens)
      : ambient_(ambient), max_gens_(max_gens) {}

  // If v lies in the current span, returns its coordinates over the inserted
  // generators; otherwise inserts v as generator #k and returns nullopt.
  std::optional<RatVector> express_or_insert(RatVector v) {
    RatVector coords(max_gens_, Rat(0));
    for (const auto& [row, rc, pivot] : rows_) {
      if (v[pivot] == 0) continue;
      const Rat f = v[pivot];
      for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * row[j];
      for (std::size_t j = 0; j < max_gens_; ++j) coords[j] += f * rc[j];
    }
    std::size_t pivot = 0;
    while (pivot < ambient_ && v[pivot] == 0) ++pivot;
    if (pivot == ambient_) return coords;
    // Normalize and insert; the generator is v_original = reduced + tracked,
    // so the tracking row is e_k - coords.
    RatVector rc(max_gens_, Rat(0));
    rc[count_] = 1;
    for (std::size_t j = 0; j < max_gens_; ++j) rc[j] -= coords[j];
    const Rat inv = v[pivot];
    for (auto& x : v) x /= inv;
    for (auto& x : rc) x /= inv;
    // Back-substitute against existing rows to keep reduction one-pass exact.
    for (auto& [row, rowc, rp] : rows_) {
      if (row[pivot] == 0) continue;
      const Rat f = row[pivot];
      for (std::size_t j = 0; j < ambient_; ++j) row[j] -= f * v[j];
      for (std::size_t j = 0; j < max_gens_; ++j) rowc[j] -= f * rc[j];
    }
    rows_.emplace_back(std::move(v), std::move(rc), pivot);
    ++count_;
    return std::nullopt;
  }

 private:
  std::size_t ambient_, max_gens_, count_ = 0;
  std::vector<std::tuple<RatVector, RatVector, std::size_t>> rows_;
};

}  // namespace

// ---------------------------------------------------------------------------

LinearForm LinearForm::canonical(const MatrixLieAlgebra& q, const RatMatrix& y) {
  const std::size_t d = q.basis.size();
  if (d == 0) return LinearForm{q.n, RatMatrix(q.n, q.n)};
  RatVector values(d);
  for (std::size_t i = 0; i < d; ++i) values[i] = linalg::trace_product(q.basis[i], y);
  // Unique representative in the span of the transposed basis: solve the
  // (positive-definite) Gram system tr(b_i b_k^T) c_k = values_i.
  std::vector<RatMatrix> transposed;
  transposed.reserve(d);
  for (const RatMatrix& b : q.basis) transposed.push_back(b.transpose());
  RatMatrix gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      gram.at(i, k) = linalg::trace_product(q.basis[i], transposed[k]);
  const std::optional<RatVector> c = solve_linear(gram, values);
  if (!c) throw std::logic_error("canonical form: Gram system unsolvable");
  RatMatrix rep(q.n, q.n);
  for (std::size_t k = 0; k < d; ++k)
    if ((*c)[k] != 0) rep = rep + transposed[k] * (*c)[k];
  return LinearForm{q.n, std::move(rep)};
}

Sampler Sampler::derive(const std::string& case_key) const {
  Sampler out = *this;
  out.seed = fnv1a(kFnvOffset ^ seed, case_key);
  return out;
}

std::mt19937_64 Sampler::engine(const std::string& op) const {
  return std::mt19937_64(fnv1a(kFnvOffset ^ seed, op));
}

RatMatrix contraction_form(const MatrixLieAlgebra& q, const LinearForm& xi) {
  const std::size_t d = q.basis.size();
  RatMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Rat v = xi.value(linalg::bracket(q.basis[i], q.basis[j]));
      m.at(i, j) = v;
      m.at(j, i) = -v;
    }
  return m;
}

MatrixLieAlgebra stabiliser_of(const MatrixLieAlgebra& q, const LinearForm& xi) {
  const Subspace ker = linalg::kernel_of(contraction_form(q, xi));
  return lift_kernel(q, ker, "stab(" + q.name + ")");
}

int index_numeric(const MatrixLieAlgebra& q, const Sampler& s) {
  const AlgebraTable table(q);
  return index_with_witness(table, s, "index").index;
}

std::vector<Rat> minimal_polynomial(const RatMatrix& x) {
  const std::size_t n = x.rows();
  TrackedSpan span(n * n, n + 2);
  RatMatrix power = RatMatrix::identity(n);
  for (std::size_t k = 0;; ++k) {
    if (auto coords = span.express_or_insert(power.flatten())) {
      std::vector<Rat> p(k + 1);
      for (std::size_t i = 0; i < k; ++i) p[i] = -(*coords)[i];
      p[k] = 1;
      return p;
    }
    if (k > n) throw std::logic_error("minimal polynomial search exceeded the dimension");
    power = power * x;
  }
}

bool is_semisimple_matrix(const RatMatrix& x) {
  const Poly p = minimal_polynomial(x);
  return poly_gcd_degree(p, poly_derivative(p)) == 0;
}

GenericTorusResult generic_torus(const MatrixLieAlgebra& q, const Sampler& s) {
  const AlgebraTable table(q);
  const IndexSample base = index_with_witness(table, s, "generic-torus-index");
  std::mt19937_64 rng = s.engine("generic-torus-resample");

  GenericTorusResult out;
  std::string last_failure = "no regular form found";
  for (int attempt = 0; attempt < std::max(1, s.max_resamples); ++attempt) {
    const RatMatrix y =
        attempt == 0 ? base.best_rep : table.sample_rep(rng, s.coefficient_range);
    const RatMatrix m = table.contraction(y);
    const Subspace ker = linalg::kernel_of(m);
    if (static_cast<int>(ker.dim()) != base.index) continue;  // not regular

    // Lift without the closure assertion first: the verdict for a
    // non-quasi-reductive algebra must be a report, not an exception.
    std::vector<RatMatrix> elems;
    for (const RatVector& c : ker.basis()) {
      RatMatrix z(q.n, q.n);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) z = z + q.basis[i] * c[i];
      elems.push_back(std::move(z));
    }
    bool toral = true;
    for (std::size_t i = 0; i < elems.size() && toral; ++i)
      for (std::size_t j = i + 1; j < elems.size() && toral; ++j)
        if (!linalg::bracket(elems[i], elems[j]).is_zero()) {
          last_failure = "NonSemisimpleStabiliser: generic stabiliser is not abelian";
          out.witness = linalg::bracket(elems[i], elems[j]);
          toral = false;
        }
    for (std::size_t i = 0; i < elems.size() && toral; ++i)
      if (!is_semisimple_matrix(elems[i])) {
        last_failure =
            "NonSemisimpleStabiliser: generic stabiliser contains a non-semisimple element";
        out.witness = elems[i];
        toral = false;
      }
    if (!toral) continue;

    out.ok = true;
    out.torus = realize::make_algebra(q.n, std::move(elems), "torus(" + q.name + ")");
    out.form = LinearForm{q.n, y};
    out.failure.clear();
    return out;
  }
  out.ok = false;
  out.failure = last_failure;
  return out;
}

MatrixLieAlgebra mrs_numeric(const MatrixLieAlgebra& q, const Sampler& s) {
  std::string last = "no attempt";
  bool reductivity_failed = false;
  for (int attempt = 0; attempt < std::max(1, s.max_resamples); ++attempt) {
    const Sampler sa = s.derive("mrs-attempt-" + std::to_string(attempt));
    const GenericTorusResult gt = generic_torus(q, sa);
    if (!gt.ok)
      throw ReductivityCheckFailed(q.name + ": " + gt.failure);
    const int idx = gt.torus.dim();

    std::vector<RatVector> t_flat;
    for (const RatMatrix& t : gt.torus.basis) t_flat.push_back(t.flatten());
    RatVector x_perp;
    try {
      x_perp = linalg::project_against(
          gt.form.rep.flatten(), t_flat,
          [&](const RatVector& u, const RatVector& v) { return flat_trace_form(u, v, q.n); });
    } catch (const linalg::DegenerateGram&) {
      last = "degenerate Gram matrix on the generic torus";
      continue;
    }
    const LinearForm xi =
        LinearForm::canonical(q, RatMatrix::unflatten(q.n, q.n, std::move(x_perp)));
    MatrixLieAlgebra m = stabiliser_of(q, xi);
    m.name = "mrs_numeric(" + q.name + ")";

    bool vanishes = true;
    for (const RatMatrix& b : m.basis)
      if (xi.value(b) != 0) vanishes = false;
    if (!vanishes) {
      last = "split form does not vanish on its stabiliser";
      continue;
    }
    if (!trace_form_nondegenerate(m.basis)) {
      last = "trace form degenerate on the candidate stabiliser";
      reductivity_failed = true;
      continue;
    }
    if (index_numeric(m, sa.derive("mrs-rank")) != idx) {
      last = "stabiliser rank differs from the ambient index";
      continue;
    }
    return m;
  }
  if (reductivity_failed) throw ReductivityCheckFailed(q.name + ": " + last);
  throw PersistentDegeneracy(q.name + ": " + last);
}

Subspace upsilon_space(const MatrixLieAlgebra& q, const MatrixLieAlgebra& m) {
  const std::size_t d = q.basis.size();
  {
    const Subspace qspan = Subspace::span(
        static_cast<std::size_t>(q.n) * q.n, [&] {
          std::vector<RatVector> rows;
          for (const RatMatrix& b : q.basis) rows.push_back(b.flatten());
          return rows;
        }());
    for (const RatMatrix& b : m.basis)
      if (!qspan.contains(b.flatten()))
        throw std::invalid_argument("candidate subalgebra is not contained in the algebra");
  }
  // Work in the coefficient space of representatives y = sum c_j b_j^T: the
  // conditions tr(z y) = 0 for z = m_k and z = [b_i, m_k] are linear in c.
  std::vector<RatMatrix> transposed;
  for (const RatMatrix& b : q.basis) transposed.push_back(b.transpose());
  std::vector<RatMatrix> conditions;
  for (const RatMatrix& mk : m.basis) {
    conditions.push_back(mk);
    for (const RatMatrix& bi : q.basis) conditions.push_back(linalg::bracket(bi, mk));
  }
  RatMatrix sys(conditions.size(), d);
  for (std::size_t r = 0; r < conditions.size(); ++r)
    for (std::size_t j = 0; j < d; ++j)
      sys.at(r, j) = linalg::trace_product(conditions[r], transposed[j]);
  const Subspace cspace = linalg::kernel_of(sys);
  // Convert coefficient vectors to basis-value coordinates: values = G c.
  const RatMatrix gram = [&] {
    RatMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        g.at(i, j) = linalg::trace_product(q.basis[i], transposed[j]);
    return g;
  }();
  std::vector<RatVector> value_rows;
  for (const RatVector& c : cspace.basis()) {
    RatVector values(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (c[j] != 0) values[i] += gram.at(i, j) * c[j];
    value_rows.push_back(std::move(values));
  }
  return Subspace::span(d, value_rows);
}

LinearForm form_from_coords(const MatrixLieAlgebra& q, const RatVector& values) {
  if (values.size() != q.basis.size())
    throw std::invalid_argument("one value per basis element expected");
  const std::size_t d = q.basis.size();
  std::vector<RatMatrix> transposed;
  for (const RatMatrix& b : q.basis) transposed.push_back(b.transpose());
  RatMatrix gram(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      gram.at(i, k) = linalg::trace_product(q.basis[i], transposed[k]);
  const std::optional<RatVector> c = solve_linear(gram, values);
  if (!c) throw std::logic_error("value vector not realizable");
  RatMatrix rep(q.n, q.n);
  for (std::size_t k = 0; k < d; ++k)
    if ((*c)[k] != 0) rep = rep + transposed[k] * (*c)[k];
  LinearForm out{q.n, std::move(rep)};
  for (std::size_t i = 0; i < d; ++i)
    if (out.value(q.basis[i]) != values[i])
      throw std::logic_error("canonical representative mismatch");
  return out;
}

VerifyResult verify_mrs(const MatrixLieAlgebra& q, const MatrixLieAlgebra& m,
                        const Sampler& s) {
  const std::size_t amb = static_cast<std::size_t>(q.n) * q.n;
  std::vector<RatVector> mflat;
  for (const RatMatrix& b : m.basis) mflat.push_back(b.flatten());
  const Subspace mspan = Subspace::span(amb, mflat);
  {
    std::vector<RatVector> qflat;
    for (const RatMatrix& b : q.basis) qflat.push_back(b.flatten());
    const Subspace qspan = Subspace::span(amb, qflat);
    for (const RatVector& v : mflat)
      if (!qspan.contains(v))
        throw std::invalid_argument("candidate not contained in the algebra");
  }
  for (std::size_t i = 0; i < m.basis.size(); ++i)
    for (std::size_t j = i + 1; j < m.basis.size(); ++j)
      if (!mspan.contains(linalg::bracket(m.basis[i], m.basis[j]).flatten()))
        throw std::invalid_argument("candidate is not bracket-closed");
  if (!trace_form_nondegenerate(m.basis))
    throw std::invalid_argument("trace form degenerate on the candidate");

  const AlgebraTable table(q);
  // Upsilon space in representative-coefficient coordinates.
  std::vector<RatMatrix> conditions;
  for (const RatMatrix& mk : m.basis) {
    conditions.push_back(mk);
    for (const RatMatrix& bi : q.basis) conditions.push_back(linalg::bracket(bi, mk));
  }
  RatMatrix sys(conditions.size(), q.basis.size());
  for (std::size_t r = 0; r < conditions.size(); ++r)
    for (std::size_t j = 0; j < q.basis.size(); ++j)
      sys.at(r, j) = linalg::trace_product(conditions[r], table.transposed[j]);
  const Subspace cspace = linalg::kernel_of(sys);

  VerifyResult out;
  out.upsilon_dim = static_cast<int>(cspace.dim());
  std::mt19937_64 rng = s.engine("verify-mrs");
  const int rounds = std::max(1, s.max_resamples);
  for (int round = 0; round < rounds; ++round) {
    ++out.attempts;
    RatMatrix y(q.n, q.n);
    for (const RatVector& c : cspace.basis()) {
      const long r = draw(rng, s.coefficient_range);
      if (r == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0) y = y + table.transposed[j] * (c[j] * Rat(r));
    }
    const Subspace ker = linalg::kernel_of(table.contraction(y));
    std::vector<RatVector> stab_flat;
    for (const RatVector& c : ker.basis()) {
      RatVector v(amb, Rat(0));
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const RatVector bi = q.basis[i].flatten();
        for (std::size_t w = 0; w < amb; ++w) v[w] += c[i] * bi[w];
      }
      stab_flat.push_back(std::move(v));
    }
    const int dim_stab = static_cast<int>(ker.dim());
    if (out.best_stabiliser_dim < 0 || dim_stab < out.best_stabiliser_dim)
      out.best_stabiliser_dim = dim_stab;
    if (Subspace::span(amb, stab_flat) == mspan) {
      out.passed = true;
      out.message = "stabiliser of a generic annihilating form equals the candidate";
      return out;
    }
  }
  out.message = "no sampled form in the Upsilon space had stabiliser equal to the candidate "
                "(best stabiliser dimension " +
                std::to_string(out.best_stabiliser_dim) + " vs candidate " +
                std::to_string(m.dim()) + ")";
  return out;
}

CertifiedEmbedding certify_gl_embedding(const MatrixLieAlgebra& q,
                                        const meander::GlMrsDescriptor& desc,
                                        const Sampler& s) {
  CertifiedEmbedding out;
  // Enumerate flip patterns: the first interval of each factor stays in
  // natural order (an overall reversal is an inner automorphism), later
  // intervals may be order-reversed. Pattern 0 is the straight embedding.
  std::vector<int> free_counts;
  int free_bits = 0;
  for (const auto& f : desc.factors) {
    const int free_n = std::max<int>(0, static_cast<int>(f.intervals.size()) - 1);
    free_counts.push_back(free_n);
    free_bits += free_n;
  }
  const long budget = free_bits >= 12 ? 4096 : (1L << free_bits);
  for (long mask = 0; mask < budget; ++mask) {
    realize::GlEmbedOptions opt;
    long rest = mask;
    for (std::size_t fi = 0; fi < desc.factors.size(); ++fi) {
      std::vector<bool> flips(desc.factors[fi].intervals.size(), false);
      for (int k = 0; k < free_counts[fi]; ++k) {
        flips[k + 1] = (rest & 1) != 0;
        rest >>= 1;
      }
      opt.flips.push_back(std::move(flips));
    }
    MatrixLieAlgebra m = realize::embed_mrs_gl(desc, q.n, opt);
    VerifyResult v = verify_mrs(q, m, s);
    if (v.passed || mask + 1 == budget) {
      out.m = std::move(m);
      out.verdict = std::move(v);
      out.flips = std::move(opt.flips);
      if (out.verdict.passed) return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reductive type identification.
// ---------------------------------------------------------------------------

namespace {

// All integer roots of a monic integer polynomial, found by scanning
// divisor candidates within the Gershgorin bound; returns nullopt when the
// polynomial does not split into linear factors over these roots.
std::optional<std::vector<std::pair<long, int>>> integer_roots(Poly f, long bound) {
  std::vector<std::pair<long, int>> roots;
  poly_trim(f);
  while (f.size() > 1) {
    bool found = false;
    // Integer roots divide the constant term (the polynomial stays monic
    // integral through synthetic division), which prunes the scan.
    const mpz_class a0 = f.front().get_num();
    for (long cand = -bound; cand <= bound && !found; ++cand) {
      if (cand == 0) {
        if (a0 != 0) continue;
      } else if (a0 != 0 && !mpz_divisible_ui_p(a0.get_mpz_t(),
                                                static_cast<unsigned long>(
                                                    cand < 0 ? -cand : cand))) {
        continue;
      }
      Rat v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = v * Rat(cand) + f[i];
      if (v != 0) continue;
      found = true;
      int mult = 0;
      while (true) {
        // Synthetic division by (x - cand).
        Poly g(f.size() - 1);
        Rat carry = f.back();
        for (std::size_t i = f.size() - 1; i-- > 0;) {
          g[i] = carry;
          carry = f[i] + carry * Rat(cand);
        }
        if (carry != 0) break;
        f = g;
        ++mult;
        if (f.size() <= 1) break;
      }
      roots.emplace_back(cand, mult);
    }
    if (!found) return std::nullopt;
  }
  return roots;
}

roots::SimpleType component_type(int rank, int nroots, const std::vector<Rat>& norms) {
  using roots::Family;
  std::set<Rat> distinct(norms.begin(), norms.end());
  if (distinct.size() == 1) {
    if (nroots == rank * (rank + 1)) return {Family::A, rank};
    if (rank >= 4 && nroots == 2 * rank * (rank - 1)) return {Family::D, rank};
    if (rank == 6 && nroots == 72) return {Family::E, 6};
    if (rank == 7 && nroots == 126) return {Family::E, 7};
    if (rank == 8 && nroots == 240) return {Family::E, 8};
    throw std::domain_error("unrecognized simply-laced component");
  }
  if (distinct.size() != 2) throw std::domain_error("more than two root lengths");
  const Rat lo = *distinct.begin(), hi = *distinct.rbegin();
  const Rat ratio = hi / lo;
  int nshort = 0;
  for (const Rat& v : norms)
    if (v == lo) ++nshort;
  if (ratio == 3) {
    if (rank == 2 && nroots == 12) return {Family::G, 2};
    throw std::domain_error("unrecognized triple-laced component");
  }
  if (ratio != 2) throw std::domain_error("unexpected root length ratio");
  if (rank == 2 && nroots == 8) return {Family::B, 2};
  if (rank == 4 && nroots == 48 && nshort == 24) return {Family::F, 4};
  if (nroots == 2 * rank * rank && nshort == 2 * rank) return {Family::B, rank};
  if (nroots == 2 * rank * rank && nshort == 2 * rank * (rank - 1))
    return {Family::C, rank};
  throw std::domain_error("unrecognized double-laced component");
}

// A basis of the elements of span(basis) supported strictly above (upper) or
// strictly below (lower) the main diagonal; such matrices are nilpotent.
std::vector<RatMatrix> strictly_triangular_elements(
    const std::vector<RatMatrix>& basis, int n, bool upper) {
  std::vector<RatMatrix> out;
  if (basis.empty()) return out;
  std::vector<std::pair<int, int>> banned;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (upper ? i >= j : i <= j) banned.emplace_back(i, j);
  RatMatrix sys(banned.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col)
    for (std::size_t row = 0; row < banned.size(); ++row)
      sys.at(row, col) = basis[col].at(banned[row].first, banned[row].second);
  const Subspace ker = linalg::kernel_of(sys);
  for (const RatVector& c : ker.basis()) {
    RatMatrix e(n, n);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (c[j] != 0) e = e + basis[j] * c[j];
    out.push_back(std::move(e));
  }
  return out;
}

// The semisimple member h = [e, y] of an sl2 triple through the nonzero
// nilpotent e, obtained by solving the linear system [[e, y], e] = 2e with
// y in span(basis). Such an h acts with integral eigenvalues in every
// finite-dimensional representation. Returns nullopt when no sl2 through e
// exists inside the span, as happens in non-reductive algebras.
std::optional<RatMatrix> sl2_semisimple_through(
    const RatMatrix& e, const std::vector<RatMatrix>& basis, int n) {
  const std::size_t amb = static_cast<std::size_t>(n) * n;
  RatMatrix sys(amb, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const RatVector f =
        linalg::bracket(linalg::bracket(e, basis[j]), e).flatten();
    for (std::size_t r = 0; r < amb; ++r) sys.at(r, j) = f[r];
  }
  const std::optional<RatVector> y = solve_linear(sys, (e * Rat(2)).flatten());
  if (!y) return std::nullopt;
  RatMatrix ymat(n, n);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if ((*y)[j] != 0) ymat = ymat + basis[j] * (*y)[j];
  return linalg::bracket(e, ymat);
}

}  // namespace

IdentifyResult identify_type(const MatrixLieAlgebra& m, const Sampler& s) {
  IdentifyResult out;
  out.dim = m.dim();
  if (m.dim() == 0) {
    out.resolved = true;
    return out;
  }
  const std::size_t d = m.basis.size();
  const std::size_t amb = static_cast<std::size_t>(m.n) * m.n;

  // Center: kernel of the adjoint action. Derived algebra: span of brackets.
  std::vector<RatMatrix> brackets;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      brackets.push_back(linalg::bracket(m.basis[i], m.basis[j]));
  {
    RatMatrix sys(d * amb, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) {
        const RatMatrix br = linalg::bracket(m.basis[i], m.basis[k]);
        const RatVector f = br.flatten();
        for (std::size_t w = 0; w < amb; ++w) sys.at(k * amb + w, i) = f[w];
      }
    out.center_dim = static_cast<int>(linalg::kernel_of(sys).dim());
  }
  {
    std::vector<RatVector> rows;
    for (const RatMatrix& b : brackets) rows.push_back(b.flatten());
    out.derived_dim = static_cast<int>(Subspace::span(amb, rows).dim());
  }
  out.rank = index_numeric(m, s);

  // A Cartan subalgebra on which the roots take rational values, built by
  // repeatedly splitting off sl2 triples: find a nilpotent in the derived
  // algebra of the current centralizer (any element supported strictly on
  // one side of the diagonal works), complete it to an sl2, and cut down to
  // the centralizer of the sl2's semisimple member h. Because each h has
  // integral ad-eigenvalues, the chain stays rational, and it terminates as
  // soon as the centralizer is abelian — for a reductive algebra that is a
  // Cartan subalgebra, of dimension equal to the index.
  std::vector<RatMatrix> tb = m.basis;
  std::vector<RatMatrix> hs;  // the collected sl2 semisimple members
  bool abelian = false;
  for (std::size_t guard = 0; guard <= d; ++guard) {
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < tb.size(); ++i)
      for (std::size_t j = i + 1; j < tb.size(); ++j)
        rows.push_back(linalg::bracket(tb[i], tb[j]).flatten());
    const Subspace der = Subspace::span(amb, rows);
    if (der.dim() == 0) {
      abelian = true;
      break;
    }
    std::vector<RatMatrix> dmat;
    for (const RatVector& f : der.basis())
      dmat.push_back(RatMatrix::unflatten(m.n, m.n, f));
    std::optional<RatMatrix> h;
    for (const bool upper : {true, false}) {
      for (const RatMatrix& e :
           strictly_triangular_elements(dmat, m.n, upper)) {
        h = sl2_semisimple_through(e, tb, m.n);
        if (h) break;
      }
      if (h) break;
    }
    if (!h) return out;  // no rational sl2 found: report invariants only
    RatMatrix sys(amb, tb.size());
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const RatVector f = linalg::bracket(*h, tb[j]).flatten();
      for (std::size_t r = 0; r < amb; ++r) sys.at(r, j) = f[r];
    }
    const Subspace cz = linalg::kernel_of(sys);
    if (cz.dim() >= tb.size()) return out;  // must shrink strictly
    std::vector<RatMatrix> next;
    for (const RatVector& c : cz.basis()) {
      RatMatrix x(m.n, m.n);
      for (std::size_t j = 0; j < tb.size(); ++j)
        if (c[j] != 0) x = x + tb[j] * c[j];
      next.push_back(std::move(x));
    }
    tb = std::move(next);
    hs.push_back(*h);
  }
  if (!abelian || static_cast<int>(tb.size()) != out.rank) return out;
  const std::size_t rho = tb.size();

  // Flattened basis of m, for expressing ad(h) as a d-by-d matrix below.
  RatMatrix bmat(amb, d);
  for (std::size_t j = 0; j < d; ++j) {
    const RatVector f = m.basis[j].flatten();
    for (std::size_t r = 0; r < amb; ++r) bmat.at(r, j) = f[r];
  }

  // Regular elements are drawn from the span of the sl2 members hs, not from
  // the full Cartan basis tb: each hs entry acts with small integral
  // ad-eigenvalues (sl2 weights), so every integer combination does too, and
  // the eigenvalue scan stays within a tiny bound no matter how wild the
  // matrix entries are. Roots never vanish on that span (a root vector kills
  // all of hs only if it sits in their joint centralizer, which is abelian),
  // but two roots may still agree there — e.g. for two isomorphic simple
  // factors. When that happens some eigenspace has dimension > 1; its
  // elements are nilpotent (they have nonzero weight), so another sl2 is
  // split off from it and the draw span is enlarged until all roots are
  // separated.
  std::mt19937_64 rng = s.engine("identify-regular");
  const int attempts = std::max(1, s.max_resamples) + 2 * static_cast<int>(d);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    RatMatrix h(m.n, m.n);
    for (const RatMatrix& t : hs) h = h + t * Rat(draw(rng, s.coefficient_range));
    const long bound =
        s.coefficient_range * static_cast<long>(hs.size()) * static_cast<long>(d) + 1;

    // Candidate ad-eigenvalues: integer roots of the minimal polynomial of
    // ad(h) acting on m. Working with the ad action directly keeps a
    // non-split center of m — which contributes zero to every root — from
    // spoiling the eigenvalue computation.
    RatMatrix admat(d, d);
    bool closed = true;
    for (std::size_t j = 0; j < d && closed; ++j) {
      const std::optional<RatVector> c =
          solve_linear(bmat, linalg::bracket(h, m.basis[j]).flatten());
      if (!c) {
        closed = false;
        break;
      }
      for (std::size_t i = 0; i < d; ++i) admat.at(i, j) = (*c)[i];
    }
    if (!closed) return out;  // basis not bracket-closed: not a Lie algebra
    const auto eigs = integer_roots(minimal_polynomial(admat), bound);
    if (!eigs) continue;  // irrational ad-eigenvalues for this combination

    std::set<long> deltas;
    for (const auto& [val, mult] : *eigs)
      if (val != 0) deltas.insert(val);

    // Eigenspaces of ad(h) in m for the nonzero eigenvalues.
    std::vector<Subspace> spaces;
    std::size_t covered = 0;
    for (long delta : deltas) {
      RatMatrix sys(amb, d);
      for (std::size_t i = 0; i < d; ++i) {
        const RatMatrix w = linalg::bracket(h, m.basis[i]) - m.basis[i] * Rat(delta);
        const RatVector f = w.flatten();
        for (std::size_t r = 0; r < amb; ++r) sys.at(r, i) = f[r];
      }
      spaces.push_back(linalg::kernel_of(sys));
      covered += spaces.back().dim();
    }
    if (covered + rho != d) continue;  // h not regular on the span; retry

    // A fat eigenspace means two roots agree on span(hs): split off an sl2
    // through one of its (necessarily nilpotent) members and redraw.
    const Subspace* fat = nullptr;
    for (const Subspace& sp : spaces)
      if (sp.dim() > 1) fat = &sp;
    if (fat) {
      bool extended = false;
      for (const RatVector& c : fat->basis()) {
        RatMatrix v(m.n, m.n);
        for (std::size_t i = 0; i < d; ++i)
          if (c[i] != 0) v = v + m.basis[i] * c[i];
        const std::optional<RatMatrix> h2 = sl2_semisimple_through(v, m.basis, m.n);
        if (h2) {
          hs.push_back(*h2);
          extended = true;
        }
      }
      if (!extended) return out;  // cannot separate: report invariants only
      continue;
    }

    std::vector<RatVector> root_vectors;
    bool clean = true;
    for (const Subspace& sp : spaces) {
      for (const RatVector& c : sp.basis()) {
        RatMatrix v(m.n, m.n);
        for (std::size_t i = 0; i < d; ++i)
          if (c[i] != 0) v = v + m.basis[i] * c[i];
        const RatVector vf = v.flatten();
        std::size_t lead = 0;
        while (lead < amb && vf[lead] == 0) ++lead;
        RatVector alpha(rho);
        for (std::size_t j = 0; j < rho && clean; ++j) {
          const RatMatrix w = linalg::bracket(tb[j], v);
          const RatVector wf = w.flatten();
          const Rat mu = wf[lead] / vf[lead];
          for (std::size_t p = 0; p < amb && clean; ++p)
            if (wf[p] != mu * vf[p]) clean = false;  // eigenvector mixes roots
          alpha[j] = mu;
        }
        if (!clean) break;
        root_vectors.push_back(std::move(alpha));
      }
      if (!clean) break;
    }
    if (!clean) continue;  // retry with a fresh regular element

    // Partition the roots into irreducible components.
    const std::set<RatVector> root_set(root_vectors.begin(), root_vectors.end());
    const std::size_t nr = root_vectors.size();
    std::vector<std::size_t> parent(nr);
    for (std::size_t i = 0; i < nr; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto related = [&](const RatVector& a, const RatVector& b) {
      RatVector sum(rho), diff(rho), neg(rho);
      bool is_neg = true;
      for (std::size_t j = 0; j < rho; ++j) {
        sum[j] = a[j] + b[j];
        diff[j] = a[j] - b[j];
        if (a[j] != -b[j]) is_neg = false;
      }
      return is_neg || root_set.count(sum) || root_set.count(diff);
    };
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = i + 1; j < nr; ++j)
        if (related(root_vectors[i], root_vectors[j])) parent[find(i)] = find(j);

    // Norms via the trace-form Gram matrix of the torus.
    const RatMatrix gram = trace_gram(tb);
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < nr; ++i) comps[find(i)].push_back(i);
    std::vector<roots::SimpleType> simples;
    bool resolved = true;
    for (const auto& [root_idx, members] : comps) {
      std::vector<RatVector> vecs;
      std::vector<Rat> norms;
      for (std::size_t i : members) {
        vecs.push_back(root_vectors[i]);
        const std::optional<RatVector> g = solve_linear(gram, root_vectors[i]);
        if (!g) {
          resolved = false;
          break;
        }
        Rat norm = 0;
        for (std::size_t j = 0; j < rho; ++j) norm += root_vectors[i][j] * (*g)[j];
        norms.push_back(norm);
      }
      if (!resolved) break;
      const int comp_rank = static_cast<int>(
          Subspace::span(rho, vecs).dim());
      try {
        simples.push_back(component_type(comp_rank, static_cast<int>(members.size()), norms));
      } catch (const std::domain_error&) {
        resolved = false;
        break;
      }
    }
    if (!resolved) return out;
    classical::NormalizedType type;
    type.simples = std::move(simples);
    std::sort(type.simples.begin(), type.simples.end());
    type.center_dim = out.center_dim;
    if (type.rank() != out.rank) return out;
    out.type = std::move(type);
    out.resolved = true;
    return out;
  }
  return out;
}

}  // namespace mrstab::oracle
