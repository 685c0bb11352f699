#include "mrstab/linalg.hpp"

#include <stdexcept>

namespace mrstab {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat x;
  if (x.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  x.canonicalize();
  return x;
}

}  // namespace mrstab

namespace mrstab::linalg {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return RatMatrix();
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw std::invalid_argument("ragged rows in RatMatrix::from_rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("shape mismatch in matrix addition");
  RatMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("shape mismatch in matrix subtraction");
  RatMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("shape mismatch in matrix multiplication");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

RatMatrix RatMatrix::operator*(const Rat& c) const {
  RatMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
  return r;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Rat RatMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Rat t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const Rat& x : a_)
    if (x != 0) return false;
  return true;
}

RatVector RatMatrix::row(std::size_t i) const {
  RatVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

RatMatrix RatMatrix::unflatten(std::size_t rows, std::size_t cols, RatVector data) {
  if (data.size() != rows * cols)
    throw std::invalid_argument("unflatten: size mismatch");
  RatMatrix m(rows, cols);
  m.a_ = std::move(data);
  return m;
}

RatMatrix bracket(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

Rat trace_product(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("shape mismatch in trace_product");
  Rat t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0 || b.at(k, i) == 0) continue;
      t += a.at(i, k) * b.at(k, i);
    }
  return t;
}

std::vector<std::size_t> rref(std::vector<RatVector>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rat inv = Rat(1) / rows[r][c];
    for (std::size_t j = c; j < ncols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);  // drop the zero rows
  return pivots;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<RatVector>& generators) {
  Subspace s(ambient);
  std::vector<RatVector> rows;
  rows.reserve(generators.size());
  for (const RatVector& g : generators) {
    if (g.size() != ambient)
      throw std::invalid_argument("generator has wrong ambient dimension");
    rows.push_back(g);
  }
  s.pivots_ = rref(rows);
  s.basis_ = std::move(rows);
  return s;
}

RatVector Subspace::reduce(RatVector v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("vector has wrong ambient dimension");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rat& c = v[pivots_[i]];
    if (c == 0) continue;
    const Rat f = c;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) v[j] -= f * basis_[i][j];
  }
  return v;
}

bool Subspace::contains(const RatVector& v) const {
  RatVector r = reduce(v);
  for (const Rat& x : r)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const RatVector& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

std::optional<RatVector> Subspace::coordinates(const RatVector& v) const {
  if (!contains(v)) return std::nullopt;
  RatVector coeffs(basis_.size());
  // The echelon basis has unit pivots and cleared pivot columns, so the
  // coefficient of basis row i is just the entry of v in its pivot column.
  for (std::size_t i = 0; i < basis_.size(); ++i) coeffs[i] = v[pivots_[i]];
  return coeffs;
}

std::size_t rank_of(const RatMatrix& m) {
  std::vector<RatVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rref(rows).size();
}

Subspace kernel_of(const RatMatrix& m) {
  std::vector<RatVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  const std::vector<std::size_t> pivots = rref(rows);

  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<RatVector> gens;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    RatVector v(m.cols());
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][c];
    gens.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), gens);
}

Subspace row_space(const RatMatrix& m) {
  std::vector<RatVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return Subspace::span(m.cols(), rows);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace sum: ambient mismatch");
  std::vector<RatVector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), gens);
}

Subspace orthogonal_complement(const Subspace& s) {
  if (s.dim() == 0) {
    // Kernel of the empty system is the whole space.
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < s.ambient(); ++i) {
      RatVector e(s.ambient());
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return Subspace::span(s.ambient(), gens);
  }
  return kernel_of(RatMatrix::from_rows(s.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("subspace intersection: ambient mismatch");
  return orthogonal_complement(sum(orthogonal_complement(a), orthogonal_complement(b)));
}

RatVector project_against(
    const RatVector& x, const std::vector<RatVector>& t_basis,
    const std::function<Rat(const RatVector&, const RatVector&)>& form) {
  const std::size_t k = t_basis.size();
  if (k == 0) return x;

  // Solve Gram * c = (form(x, t_i))_i and subtract sum c_i t_i from x.
  std::vector<RatVector> aug(k, RatVector(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat v = form(t_basis[i], t_basis[j]);
      aug[i][j] = v;
      aug[j][i] = v;
    }
    aug[i][k] = form(x, t_basis[i]);
  }
  const std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != k || pivots.back() == k) throw DegenerateGram();

  RatVector perp = x;
  for (std::size_t i = 0; i < k; ++i) {
    const Rat& ci = aug[i][k];
    if (ci == 0) continue;
    for (std::size_t j = 0; j < perp.size(); ++j) perp[j] -= ci * t_basis[i][j];
  }
  return perp;
}

}  // namespace mrstab::linalg
