#include "fqmbl/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fqmbl {

int stagnation_limit(int n, int m) {
  return static_cast<int>(std::floor(n * std::sqrt(static_cast<double>(m))));
}

long long iteration_cap(int n, int m) {
  const long long l = stagnation_limit(n, m);
  return l * l;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    const long long num = n - k + i;
    if (r > std::numeric_limits<long long>::max() / num) return std::numeric_limits<long long>::max();
    r = r * num / i;
  }
  return r;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
  // splitmix64 finalizer over base + golden-ratio stride
  std::uint64_t z = base + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace fqmbl
