// Dense exact linear algebra over Q: matrices, canonical subspaces, and the
// orthogonal-projection helper used to split a vector against a subalgebra
// with respect to an invariant bilinear form.
//
// Subspaces are always stored in reduced row-echelon form, so two subspaces
// are equal if and only if their stored data are equal.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mrstab/rational.hpp"

namespace mrstab::linalg {

using RatVector = std::vector<Rat>;

class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMatrix& o) const = default;

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator*(const Rat& c) const;
  RatMatrix transpose() const;
  Rat trace() const;
  bool is_zero() const;

  RatVector row(std::size_t i) const;
  // Row-major flattening; the inverse of unflatten below.
  RatVector flatten() const { return a_; }
  static RatMatrix unflatten(std::size_t rows, std::size_t cols, RatVector data);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

// Lie bracket AB - BA.
RatMatrix bracket(const RatMatrix& a, const RatMatrix& b);
// tr(AB), computed without forming the product.
Rat trace_product(const RatMatrix& a, const RatMatrix& b);

// Thrown when a projection is requested against a subspace on which the
// supplied bilinear form is degenerate.
struct DegenerateGram : std::runtime_error {
  DegenerateGram() : std::runtime_error("bilinear form is degenerate on the given subspace") {}
};

// A linear subspace of Q^n held in canonical (reduced row-echelon) form.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<RatVector>& generators);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RatVector>& basis() const { return basis_; }

  bool contains(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  // Residual of v after elimination against the echelon basis.
  RatVector reduce(RatVector v) const;
  // Coefficients expressing v in the echelon basis, if v lies in the subspace.
  std::optional<RatVector> coordinates(const RatVector& v) const;

  bool operator==(const Subspace& o) const = default;

 private:
  std::size_t ambient_;
  std::vector<RatVector> basis_;   // echelon rows
  std::vector<std::size_t> pivots_;  // pivot column of each row, increasing
};

// In-place Gauss-Jordan elimination to reduced row-echelon form.
// Returns the pivot columns (equivalently, the rank).
std::vector<std::size_t> rref(std::vector<RatVector>& rows);

std::size_t rank_of(const RatMatrix& m);
// Right kernel {x : Mx = 0}, canonical.
Subspace kernel_of(const RatMatrix& m);
Subspace row_space(const RatMatrix& m);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
// Orthogonal complement with respect to the standard dot product.
Subspace orthogonal_complement(const Subspace& s);

// Splits x = x_t + x_perp where x_t lies in span(t_basis) and x_perp is
// orthogonal to every t_i under `form`; returns x_perp. Requires the Gram
// matrix of t_basis to be invertible (throws DegenerateGram otherwise).
RatVector project_against(
    const RatVector& x, const std::vector<RatVector>& t_basis,
    const std::function<Rat(const RatVector&, const RatVector&)>& form);

}  // namespace mrstab::linalg
