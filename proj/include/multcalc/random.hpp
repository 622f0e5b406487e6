#pragma once

#include "multcalc/groups.hpp"
#include "multcalc/polypath.hpp"

#include <cstdint>

namespace multcalc {

/// SplitMix64 (Steele, Lea, Flood).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// Small random scalars: p/q with q in 1..6, p in [-9, 9] for rationals;
/// k/8 with k in [-16, 16] for doubles, so sums and products stay exact.
template <class S>
S random_scalar(SplitMix64& rng) {
  if constexpr (is_exact_v<S>) {
    const long q = static_cast<long>(rng.uniform_int(1, 6));
    const long p = static_cast<long>(rng.uniform_int(-9, 9));
    return S(p, q);
  } else {
    return static_cast<double>(rng.uniform_int(-16, 16)) / 8.0;
  }
}

template <class S>
NilMat<S> random_nil(SplitMix64& rng, int dim = 3) {
  Mat<S> m = zeros<S>(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = r + 1; c < dim; ++c) m(r, c) = random_scalar<S>(rng);
  return NilMat<S>::unchecked(std::move(m));
}

template <class S>
Unipotent<S> random_unipotent(SplitMix64& rng, int dim = 3) {
  return Unipotent<S>::unchecked(identity<S>(dim) + random_nil<S>(rng, dim).matrix());
}

template <class S>
PolyPath<S> random_path(SplitMix64& rng, int max_degree, int dim = 3) {
  std::vector<NilMat<S>> c;
  for (int k = 0; k <= max_degree; ++k) c.push_back(random_nil<S>(rng, dim));
  return PolyPath<S>(dim, std::move(c));
}

/// Dense matrix with entries in [-1, 1], rescaled to Frobenius norm `norm`.
inline MatD random_dense(SplitMix64& rng, int dim, double norm) {
  MatD m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
  return m * (norm / m.norm());
}

inline Perm3 random_perm(SplitMix64& rng) { return Perm3::from_index(static_cast<int>(rng.uniform_int(0, 5))); }

template <class B, class Gen>
SeqElt<B> random_seq(SplitMix64& rng, int max_support, Gen gen) {
  const int n = static_cast<int>(rng.uniform_int(0, max_support));
  std::vector<B> e;
  for (int k = 0; k < n; ++k) e.push_back(gen(rng));
  return SeqElt<B>(std::move(e));
}

}  // namespace multcalc
