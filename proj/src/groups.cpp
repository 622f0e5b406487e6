#include "multcalc/groups.hpp"

#include <algorithm>
#include <sstream>

namespace multcalc {

const std::array<Perm3, 6>& Perm3::all() {
  static const std::array<Perm3, 6> perms = [] {
    std::array<Perm3, 6> out{};
    std::array<int, 3> p{0, 1, 2};
    int k = 0;
    do {
      out[k++].image = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

Perm3 Perm3::from_index(int idx) {
  if (idx < 0 || idx >= 6) throw DomainError("Perm3: index out of range");
  return all()[idx];
}

int Perm3::index() const {
  const auto& perms = all();
  for (int k = 0; k < 6; ++k)
    if (perms[k] == *this) return k;
  throw DomainError("Perm3: not a permutation");
}

bool Perm3::is_even() const {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (image[i] > image[j]) ++inversions;
  return inversions % 2 == 0;
}

Perm3 mul(const Perm3& p, const Perm3& q) {
  Perm3 r;
  for (int i = 0; i < 3; ++i) r.image[i] = p.image[q.image[i]];
  return r;
}

Perm3 inverse(const Perm3& p) {
  Perm3 r;
  for (int i = 0; i < 3; ++i) r.image[p.image[i]] = i;
  return r;
}

MatD to_matrix(const Perm3& p) {
  MatD m = MatD::Zero(3, 3);
  for (int i = 0; i < 3; ++i) m(p.image[i], i) = 1.0;
  return m;
}

double distance(const Perm3& a, const Perm3& b) { return (to_matrix(a) - to_matrix(b)).norm(); }

std::string to_string(const Perm3& p) {
  std::ostringstream os;
  os << '[' << p.image[0] << ',' << p.image[1] << ',' << p.image[2] << ']';
  return os.str();
}

}  // namespace multcalc
