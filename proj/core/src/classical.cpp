#include "mrstab/classical.hpp"

#include <algorithm>

namespace mrstab::classical {

using roots::Family;

void IsoParabolic::validate() const {
  if (epsilon != +1 && epsilon != -1)
    throw std::invalid_argument("epsilon must be +1 or -1");
  if (n < 2) throw std::invalid_argument("ambient dimension must be at least 2");
  if (epsilon == -1 && n % 2 != 0)
    throw std::invalid_argument("symplectic forms need even dimension");
  a.validate();
  if (a.total() < 1 || a.total() > n / 2)
    throw std::invalid_argument("flag size r = " + std::to_string(a.total()) +
                                " must satisfy 1 <= r <= " + std::to_string(n / 2) +
                                " for n = " + std::to_string(n));
}

std::string IsoParabolic::to_string() const {
  const std::string g = (epsilon == -1 ? "sp_" : "so_") + std::to_string(n);
  return "p(" + g + "; " + a.to_string() + ")";
}

int ClassicalFactor::rank() const {
  switch (kind) {
    case Kind::GL: return size;
    case Kind::SP: return size / 2;
    case Kind::SO: return size / 2;
  }
  return 0;
}

long ClassicalFactor::dim() const {
  const long k = size;
  switch (kind) {
    case Kind::GL: return k * k;
    case Kind::SP: return k * (k + 1) / 2;
    case Kind::SO: return k * (k - 1) / 2;
  }
  return 0;
}

std::string ClassicalFactor::to_string() const {
  const char* name = kind == Kind::GL ? "gl_" : kind == Kind::SP ? "sp_" : "so_";
  return name + std::to_string(size);
}

void ReductiveType::add_gl(int size) {
  if (size < 0) throw std::invalid_argument("negative gl size");
  if (size > 0) factors.push_back({ClassicalFactor::Kind::GL, size});
}

void ReductiveType::add_sp(int size) {
  if (size < 0 || size % 2 != 0)
    throw std::invalid_argument("sp size must be even and nonnegative, got " +
                                std::to_string(size));
  if (size > 0) factors.push_back({ClassicalFactor::Kind::SP, size});
}

void ReductiveType::add_so(int size) {
  if (size < 0) throw std::invalid_argument("negative so size");
  if (size > 0) factors.push_back({ClassicalFactor::Kind::SO, size});
}

void ReductiveType::add_center(int dims) { center_dim += dims; }

int ReductiveType::rank() const {
  int r = center_dim;
  for (const ClassicalFactor& f : factors) r += f.rank();
  return r;
}

long ReductiveType::dim() const {
  long d = center_dim;
  for (const ClassicalFactor& f : factors) d += f.dim();
  return d;
}

std::string ReductiveType::to_string() const {
  std::string s;
  for (const ClassicalFactor& f : factors) {
    if (!s.empty()) s += " + ";
    s += f.to_string();
  }
  if (center_dim > 0) {
    if (!s.empty()) s += " + ";
    s += center_dim == 1 ? "C" : "C^" + std::to_string(center_dim);
  }
  return s.empty() ? "0" : s;
}

int normalize_factor(const ClassicalFactor& f, std::vector<SimpleType>& out) {
  const int k = f.size;
  switch (f.kind) {
    case ClassicalFactor::Kind::GL:
      if (k >= 2) out.push_back({Family::A, k - 1});
      return k >= 1 ? 1 : 0;
    case ClassicalFactor::Kind::SP:
      if (k == 2) out.push_back({Family::A, 1});
      else if (k == 4) out.push_back({Family::B, 2});  // C2 = B2
      else if (k >= 6) out.push_back({Family::C, k / 2});
      return 0;
    case ClassicalFactor::Kind::SO:
      if (k == 2) return 1;  // so_2 is a one-dimensional torus
      if (k == 3) out.push_back({Family::A, 1});
      else if (k == 4) {
        out.push_back({Family::A, 1});
        out.push_back({Family::A, 1});
      } else if (k == 5) out.push_back({Family::B, 2});
      else if (k == 6) out.push_back({Family::A, 3});
      else if (k >= 7 && k % 2 == 1) out.push_back({Family::B, k / 2});
      else if (k >= 8) out.push_back({Family::D, k / 2});
      return 0;
  }
  return 0;
}

NormalizedType ReductiveType::normalized() const {
  NormalizedType t;
  t.center_dim = center_dim;
  for (const ClassicalFactor& f : factors) t.center_dim += normalize_factor(f, t.simples);
  std::sort(t.simples.begin(), t.simples.end());
  return t;
}

int NormalizedType::rank() const {
  int r = center_dim;
  for (const SimpleType& s : simples) r += s.rank;
  return r;
}

std::string NormalizedType::to_string() const {
  std::string s;
  for (const SimpleType& st : simples) {
    if (!s.empty()) s += " + ";
    s += st.to_string();
  }
  if (center_dim > 0) {
    if (!s.empty()) s += " + ";
    s += center_dim == 1 ? "C" : "C^" + std::to_string(center_dim);
  }
  return s.empty() ? "0" : s;
}

bool composition_is_admissible(const Composition& a) {
  int prefix = 0;
  for (int part : a.parts) {
    if (part % 2 == 0 && prefix % 2 == 1) return false;
    prefix += part;
  }
  return true;
}

Composition effective_composition(const IsoParabolic& p) {
  Composition out = p.a;
  if (p.r() % 2 == 1 && 2 * p.r() == p.n) out.parts.pop_back();
  return out;
}

bool is_quasi_reductive_so(const IsoParabolic& p) {
  if (p.epsilon != +1) throw std::invalid_argument("orthogonal parabolic expected");
  p.validate();
  return composition_is_admissible(effective_composition(p));
}

ReductiveType mrs_sp(const IsoParabolic& p) {
  if (p.epsilon != -1) throw std::invalid_argument("symplectic parabolic expected");
  p.validate();
  ReductiveType t;
  for (int ai : p.a.parts) t.add_so(ai);
  t.add_sp(p.n - 2 * p.r());
  return t;
}

ReductiveType r_s_summand(const Composition& a, int s) {
  if (s < 0 || s > static_cast<int>(a.parts.size()))
    throw std::invalid_argument("summand cutoff out of range");
  // Even parts contribute sp_{a_i}; the odd parts (which form a terminal run
  // when no odd part is followed by an even one) are paired off disjointly
  // from the start of the run, each pair contributing sp_{a_i-1} + sp_{a_j-1}.
  // Every reachable window leaves no unpaired odd part; a leftover means the
  // caller picked an inconsistent cutoff.
  ReductiveType t;
  int pending = 0;
  for (int i = 1; i <= s; ++i) {
    const int ai = a.parts[i - 1];
    if (ai % 2 == 0) {
      if (pending != 0)
        throw std::logic_error("even part after an unpaired odd part");
      t.add_sp(ai);
    } else if (pending != 0) {
      t.add_sp(pending - 1);
      t.add_sp(ai - 1);
      pending = 0;
    } else {
      pending = ai;
    }
  }
  if (pending != 0) throw std::logic_error("unpaired odd part at cutoff");
  return t;
}

int mrs_so_case(const IsoParabolic& p) {
  if (!is_quasi_reductive_so(p))
    throw NotQuasiReductive(p.to_string() + " is not quasi-reductive");
  const int r = p.r();
  const int at = p.a.parts.back();
  if (r % 2 == 0) return 1;
  if (2 * r < p.n) return 2;
  // From here on r = n/2 is odd: the flag ends in a maximal isotropic
  // subspace of an even-dimensional space.  (For odd n, r = (n-1)/2 still
  // falls under case 2, with the so_{n-2r-1} summand vanishing.)
  if (at % 2 == 0) return 5;
  return at == 1 ? 3 : 4;
}

ReductiveType mrs_so(const IsoParabolic& p) {
  const int c = mrs_so_case(p);
  const int r = p.r(), n = p.n;
  const int t = static_cast<int>(p.a.parts.size());
  const std::vector<int>& parts = p.a.parts;
  ReductiveType m;
  switch (c) {
    case 1:
      m = r_s_summand(p.a, t);
      m.add_so(n - 2 * r);
      break;
    case 2:
      m = r_s_summand(p.a, t - 1);
      m.add_sp(parts[t - 1] - 1);
      m.add_so(n - 2 * r - 1);
      break;
    case 3:
      m = r_s_summand(p.a, t - 1);
      m.add_center();
      break;
    case 4:
      m = r_s_summand(p.a, t - 1);
      m.add_sp(parts[t - 1] - 3);
      break;
    case 5:
      m = r_s_summand(p.a, t - 2);
      m.add_sp(parts[t - 2] - 1);
      m.add_sp(parts[t - 1] - 2);
      break;
    default:
      throw std::logic_error("unreachable");
  }
  return m;
}

}  // namespace mrstab::classical
