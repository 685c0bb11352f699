// The independent exact-arithmetic verifier: coadjoint contraction forms,
// stabilisers, index by random sampling, generic tori with semisimplicity
// certificates, the nilpotent-and-reductive-type form obtained by splitting
// a regular form against its own stabiliser, Upsilon-space certification of
// a candidate maximal reductive stabiliser, and identification of the
// reductive type of a certified subalgebra from its adjoint root system.
//
// All randomness is drawn from a Sampler: deterministic given (seed, case),
// with integer coefficients in [-R, R]. Genericity arguments make failure
// probabilities negligible; degeneracies trigger bounded resampling and are
// surfaced as structured errors when persistent.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrstab/classical.hpp"
#include "mrstab/linalg.hpp"
#include "mrstab/realize.hpp"

namespace mrstab::oracle {

using linalg::RatMatrix;
using linalg::Subspace;
using realize::MatrixLieAlgebra;

// A linear form on a matrix Lie algebra, represented by a matrix y with
// xi(x) = trace(x y). Only the values on the algebra matter; the canonical
// representative (unique y in the span of the transposed basis, which exists
// because tr(x y^T) is positive definite) is produced by `canonical`.
struct LinearForm {
  int n = 0;
  RatMatrix rep;

  Rat value(const RatMatrix& x) const { return linalg::trace_product(x, rep); }
  static LinearForm canonical(const MatrixLieAlgebra& q, const RatMatrix& y);
};

struct Sampler {
  std::uint64_t seed = 0;
  int coefficient_range = 32;  // integer coefficients in [-R, R]
  int max_resamples = 8;

  // A sampler for one named case, mixed from this seed and the case key.
  Sampler derive(const std::string& case_key) const;
  // A fresh deterministic engine for one named operation.
  std::mt19937_64 engine(const std::string& op) const;
};

struct ReductivityCheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PersistentDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The antisymmetric dim q x dim q matrix [xi([b_i, b_j])].
RatMatrix contraction_form(const MatrixLieAlgebra& q, const LinearForm& xi);

// Kernel of the contraction form, lifted to matrices; asserted bracket-closed.
MatrixLieAlgebra stabiliser_of(const MatrixLieAlgebra& q, const LinearForm& xi);

// Minimal stabiliser dimension over five sampled forms.
int index_numeric(const MatrixLieAlgebra& q, const Sampler& s);

// Result of looking for a toral generic stabiliser. When `ok`, `torus` is the
// stabiliser of the regular `form` and every element is certified semisimple.
// Otherwise `failure` explains the obstruction (a non-semisimple or
// non-commuting stabiliser element after the resample budget), `witness`
// holds the offending matrix, and the verdict is probabilistic evidence that
// the algebra is not quasi-reductive.
struct GenericTorusResult {
  bool ok = false;
  MatrixLieAlgebra torus;
  LinearForm form;
  std::string failure;
  std::optional<RatMatrix> witness;
};

GenericTorusResult generic_torus(const MatrixLieAlgebra& q, const Sampler& s);

// Splits the regular form's matrix against its own stabiliser torus with
// respect to the trace form and returns the stabiliser of the remainder: a
// subalgebra on which the form vanishes (asserted), carrying a non-degenerate
// trace form (else ReductivityCheckFailed) and whose own index equals the
// index of q (asserted) — a maximal reductive stabiliser.
MatrixLieAlgebra mrs_numeric(const MatrixLieAlgebra& q, const Sampler& s);

// Linear forms vanishing on m and on [q, m], as a subspace of coordinate
// vectors relative to q's basis (xi described by its values on b_1..b_d).
// Throws std::invalid_argument if m is not contained in q.
Subspace upsilon_space(const MatrixLieAlgebra& q, const MatrixLieAlgebra& m);

// The form with prescribed values on q's basis, canonically represented.
LinearForm form_from_coords(const MatrixLieAlgebra& q, const linalg::RatVector& values);

struct VerifyResult {
  bool passed = false;
  int attempts = 0;
  int upsilon_dim = 0;
  int best_stabiliser_dim = -1;  // smallest stabiliser seen over the samples
  std::string message;
};

// Certification test: for a generic form in the Upsilon space of (q, m), the
// stabiliser must be exactly m. PASS iff some sample achieves equality (the
// stabiliser always contains m for such forms, so equality is the minimal
// possible outcome). Preconditions: m contained in q, bracket-closed, trace
// form non-degenerate on m.
VerifyResult verify_mrs(const MatrixLieAlgebra& q, const MatrixLieAlgebra& m,
                        const Sampler& s);

struct IdentifyResult {
  bool resolved = false;
  classical::NormalizedType type;  // meaningful when resolved
  // Invariant tuple, always filled:
  int dim = 0;
  int rank = 0;
  int derived_dim = 0;
  int center_dim = 0;

  std::string invariants() const {
    return "(dim " + std::to_string(dim) + ", rank " + std::to_string(rank) +
           ", derived " + std::to_string(derived_dim) + ", center " +
           std::to_string(center_dim) + ")";
  }
};

// Identifies the reductive type of m: center = kernel of the adjoint action,
// rank by sampling, and — when a Cartan subalgebra with rational root values
// can be built by splitting off sl2 triples — the root system of the derived
// algebra, with components told apart by rank, root count and length classes.
// Falls back to the bare invariant tuple (resolved = false) when no such
// Cartan subalgebra is found or an element with all-integer ad-eigenvalues
// fails to appear (e.g. for non-reductive input).
IdentifyResult identify_type(const MatrixLieAlgebra& m, const Sampler& s);

// Exact minimal polynomial, monic, as coefficients [c_0, .., c_{deg-1}, 1].
std::vector<Rat> minimal_polynomial(const RatMatrix& x);
bool is_semisimple_matrix(const RatMatrix& x);

// A certified matrix realization of a gl-type maximal reductive stabiliser:
// the straight block-diagonal embedding is tried first; if certification
// fails, the per-interval order-reversing variants are enumerated (bounded)
// until one passes. `flips` records the variant that was certified.
struct CertifiedEmbedding {
  MatrixLieAlgebra m;
  VerifyResult verdict;
  std::vector<std::vector<bool>> flips;
};

CertifiedEmbedding certify_gl_embedding(const MatrixLieAlgebra& q,
                                        const meander::GlMrsDescriptor& desc,
                                        const Sampler& s);

}  // namespace mrstab::oracle
