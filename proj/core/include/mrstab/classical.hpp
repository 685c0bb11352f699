// Quasi-reductivity tests and maximal reductive stabiliser types for
// parabolic subalgebras of sp_n and so_n.
//
// The parabolic p^eps_n(a) is the stabiliser of the isotropic flag whose
// subspace dimensions are the partial sums of the composition a of r,
// 1 <= r <= floor(n/2), inside the symplectic (eps = -1) or orthogonal
// (eps = +1) form on C^n. Its Levi factor is
// gl_{a_1} + ... + gl_{a_t} + g^eps_{n-2r}.
#pragma once

#include "mrstab/meander.hpp"
#include "mrstab/rootsys.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mrstab::classical {

using meander::Composition;
using roots::SimpleType;

// Raised when an answer is requested for a parabolic that has no maximal
// reductive stabiliser of full index, i.e. is not quasi-reductive.
struct NotQuasiReductive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IsoParabolic {
  int epsilon = +1;  // +1: orthogonal form; -1: symplectic form
  int n = 0;
  Composition a;  // composition of r with 1 <= r <= floor(n/2)

  int r() const { return a.total(); }
  int ell() const { return n / 2; }  // rank of the ambient algebra
  void validate() const;
  std::string to_string() const;  // e.g. "p(so_9; 2,1)"
};

// One classical summand of a reductive type, kept with the raw size produced
// by the formulas (so_1, so_2, sp_0 and the like are preserved for printing
// and only collapsed during normalization).
struct ClassicalFactor {
  enum class Kind { GL, SP, SO };
  Kind kind = Kind::GL;
  int size = 0;  // the subscript: gl_size, sp_size (even), so_size

  int rank() const;
  long dim() const;
  std::string to_string() const;
  bool operator==(const ClassicalFactor&) const = default;
};

// A reductive type in normal form: simple factors named as Dynkin types
// (with the small-rank identifications applied) plus a central torus.
struct NormalizedType {
  std::vector<SimpleType> simples;  // sorted
  int center_dim = 0;

  int rank() const;
  bool operator==(const NormalizedType&) const = default;
  std::string to_string() const;  // e.g. "A1 + A1 + C^2", "0" when trivial
};

// A reductive type as produced by the classical formulas: a list of raw
// gl/sp/so summands plus an explicit center.
struct ReductiveType {
  std::vector<ClassicalFactor> factors;
  int center_dim = 0;

  void add_gl(int size);
  void add_sp(int size);  // size must be even and >= 0
  void add_so(int size);
  void add_center(int dims = 1);

  int rank() const;  // = index of the parabolic it answers for
  long dim() const;
  std::string to_string() const;  // e.g. "so_1 + sp_4", "0" when trivial
  NormalizedType normalized() const;
};

// Applies the small-rank identifications to a single classical label:
// so_1 -> 0, so_2 -> C, so_3 -> A1, so_4 -> A1+A1, so_5 -> B2, so_6 -> A3,
// sp_0 -> 0, sp_2 -> A1, sp_4 -> B2 (the C2 = B2 identification), gl_k ->
// A_{k-1} + C. Appends simple factors to `out` and returns the center
// contribution.
int normalize_factor(const ClassicalFactor& f, std::vector<SimpleType>& out);

// Whether every even part starts at an even offset: for each even a_i the
// partial sum a_1 + ... + a_{i-1} is even. Equivalently, every maximal run
// of consecutive odd parts that is followed by an even part has even length.
// This is the pattern condition governing quasi-reductivity of orthogonal
// parabolics; it is also exactly the condition under which the odd parts in
// front of each even part pair off, making the r_s summands well defined.
bool composition_is_admissible(const Composition& a);

// The composition the admissibility test is applied to: a with its last part
// dropped when r is odd and equal to n/2, and a itself otherwise. The result
// may be empty.
Composition effective_composition(const IsoParabolic& p);

// Quasi-reductivity of p^{+1}_n(a). Parabolics of sp_n (eps = -1) are always
// quasi-reductive.
bool is_quasi_reductive_so(const IsoParabolic& p);

// M_*(p^{-1}_n(a)) = so_{a_1} + ... + so_{a_t} + sp_{n-2r}; requires
// eps = -1. Each so_{a_i} sits in the i-th gl Levi block and sp_{n-2r} is
// the central Levi block (matrices are built in the realize module).
ReductiveType mrs_sp(const IsoParabolic& p);

// The partial summand r_s(a): over i = 1..s, each even a_i contributes
// sp_{a_i}, and the odd parts (a terminal run, by admissibility) are paired
// off disjointly from the start of the run, each pair (a_i, a_j) contributing
// sp_{a_i-1} + sp_{a_j-1}. s may be 0 (empty type). Throws logic_error if
// the window cuts an odd pair in half; the five formula cases never do.
ReductiveType r_s_summand(const Composition& a, int s);

// Case number 1..5 of the orthogonal stabiliser formula for a
// quasi-reductive p^{+1}_n(a):
//   1: r even
//   2: r odd, 2r < n (includes r = ell for odd n)
//   3: r = n/2 odd, a_t = 1
//   4: r = n/2 odd, a_t > 1 odd
//   5: r = n/2 odd, a_t even
// Throws NotQuasiReductive when p is not quasi-reductive.
int mrs_so_case(const IsoParabolic& p);

// M_*(p^{+1}_n(a)) by the five-case formula:
//   1: r_t + so_{n-2r}
//   2: r_{t-1} + sp_{a_t-1} + so_{n-2r-1}
//   3: r_{t-1} + C
//   4: r_{t-1} + sp_{a_t-3}
//   5: r_{t-2} + sp_{a_{t-1}-1} + sp_{a_t-2}
// Throws NotQuasiReductive when p is not quasi-reductive.
ReductiveType mrs_so(const IsoParabolic& p);

}  // namespace mrstab::classical
