#include "mrstab/cascade.hpp"

#include <algorithm>

namespace mrstab::cascade {

Cascade kostant_cascade(const RootSystem& rs, const std::set<int>& pi) {
  Cascade out;
  if (pi.empty()) return out;
  for (const std::set<int>& comp : rs.connected_components(pi)) {
    const RootVector theta = rs.highest_root(comp);
    out.members.push_back(comp);
    out.roots.push_back(theta);

    std::set<int> orthogonal;
    for (int i : comp) {
      RootVector e(rs.rank(), 0);
      e[i - 1] = 1;
      if (rs.is_orthogonal(theta, e)) orthogonal.insert(i);
    }
    Cascade sub = kostant_cascade(rs, orthogonal);
    out.members.insert(out.members.end(), sub.members.begin(), sub.members.end());
    out.roots.insert(out.roots.end(), sub.roots.begin(), sub.roots.end());
  }
  return out;
}

Cascade kostant_cascade(const RootSystem& rs) { return kostant_cascade(rs, rs.full_subset()); }

int cascade_size(SimpleType type) {
  type.validate();
  const int l = type.rank;
  switch (type.family) {
    case roots::Family::A: return (l + 1) / 2;
    case roots::Family::B: return l;
    case roots::Family::C: return l;
    case roots::Family::D: return 2 * (l / 2);
    case roots::Family::E: return l == 6 ? 4 : l;  // E6 -> 4, E7 -> 7, E8 -> 8
    case roots::Family::F: return 4;
    case roots::Family::G: return 2;
  }
  throw std::logic_error("unreachable");
}

std::vector<RootVector> u_minus_support(const RootSystem& rs, const std::set<int>& pi) {
  std::vector<RootVector> out;
  for (const RootVector& theta : kostant_cascade(rs).roots) {
    const std::set<int> sup = RootSystem::support(theta);
    if (!std::includes(pi.begin(), pi.end(), sup.begin(), sup.end())) out.push_back(theta);
  }
  return out;
}

}  // namespace mrstab::cascade
