// Exact matrix realizations over Q: seaweed subalgebras of gl_n, parabolic
// subalgebras of sp_n / so_n in the anti-diagonal form convention, and the
// candidate maximal reductive stabilisers embedded from their combinatorial
// descriptors. Every constructed algebra is checked to be linearly
// independent and closed under the commutator.
#pragma once

#include <string>
#include <vector>

#include "mrstab/classical.hpp"
#include "mrstab/linalg.hpp"
#include "mrstab/meander.hpp"

namespace mrstab::realize {

using linalg::RatMatrix;

struct MatrixLieAlgebra {
  int n = 0;                          // ambient matrix size
  std::vector<RatMatrix> basis;       // n x n matrices, linearly independent
  std::string name;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Validating constructor: throws std::invalid_argument if the basis is
// linearly dependent or the commutator of two basis elements leaves the span.
MatrixLieAlgebra make_algebra(int n, std::vector<RatMatrix> basis, std::string name);

// Elementary matrix E_ij (1-based indices).
RatMatrix elementary(int n, int i, int j);

// The bilinear form matrix S fixing the ambient isometry algebra
// {X : X^T S + S X = 0}: anti-diagonal ones for epsilon = +1 (orthogonal),
// signed anti-diagonal (+1 in rows 1..n/2, -1 below) for epsilon = -1
// (symplectic; n must be even).
RatMatrix iso_form_matrix(int epsilon, int n);

bool in_span(const std::vector<RatMatrix>& basis, const RatMatrix& x);
bool is_contained(const MatrixLieAlgebra& sub, const MatrixLieAlgebra& ambient);

MatrixLieAlgebra build_gl(int n);
// Seaweed q(a|b): elementary matrices E_ij with blk_a(i) <= blk_a(j) and
// blk_b(i) >= blk_b(j).
MatrixLieAlgebra build_seaweed_gl(const meander::Composition& a,
                                  const meander::Composition& b);
// Full isometry algebra so_n (epsilon = +1) or sp_n (epsilon = -1).
MatrixLieAlgebra build_iso_algebra(int epsilon, int n);
// Stabiliser of the standard isotropic flag span(e_1..e_{r_1}) c ... inside
// the isometry algebra.
MatrixLieAlgebra build_parabolic_iso(const classical::IsoParabolic& p);

// Embedding options for the GL factors of a seaweed stabiliser: one flag per
// factor interval; a set flag conjugates that interval's copy by the
// order-reversing permutation. The default (all false) places the same block
// verbatim on every interval. Which choice certifies is decided empirically
// by the oracle (the statement pins the intervals but not the orientation).
struct GlEmbedOptions {
  std::vector<std::vector<bool>> flips;  // indexed [factor][interval]
};

MatrixLieAlgebra embed_mrs_gl(const meander::GlMrsDescriptor& d, int n,
                              const GlEmbedOptions& opt = {});

// Stabiliser summands of a symplectic flag parabolic: so_{a_i} in Levi block
// i (anti-diagonal symmetric form on the block, mirror entries forced by the
// ambient relation) and the central sp_{n-2r} block.
MatrixLieAlgebra embed_mrs_sp(const classical::IsoParabolic& p);

// Orthogonal analogue, available exactly for the dispatch cases (1) and (2):
// sp_{a_i} on even blocks, sp_{a_i - 1} on the first a_i - 1 lines of paired
// odd blocks, the central so window (case 1), or the stabiliser of the
// anisotropic vector e_{r+1} + e_{n-r} inside it (case 2). Throws
// std::domain_error for cases (3)-(5), whose construction is not block-wise.
MatrixLieAlgebra embed_mrs_so(const classical::IsoParabolic& p);

// JSON dump: {"n": .., "name": .., "dim": .., "basis": [[i, j, num, den], ..]}
// with one sparse quadruple list per basis matrix.
std::string to_json(const MatrixLieAlgebra& L);

}  // namespace mrstab::realize
