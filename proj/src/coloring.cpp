#include "imcsp/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "imcsp/error.hpp"

namespace imcsp {

namespace {

constexpr std::size_t kSat = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t x, std::size_t y) { return x > kSat - y ? kSat : x + y; }

// sum_{i <= k} C(n, i), saturating.
std::size_t ball_size(int n, int k) {
  std::size_t total = 0;
  long double binom = 1;
  for (int i = 0; i <= std::min(n, k); ++i) {
    if (i > 0) binom = binom * (n - i + 1) / i;
    if (binom >= static_cast<long double>(kSat)) return kSat;
    total = sat_add(total, static_cast<std::size_t>(std::llround(binom)));
  }
  return total;
}

std::size_t full_size(int n) { return n >= 63 ? kSat : (std::size_t{1} << n); }

// Visits every subset of {0..n-1} of size <= k in order of (size, lexicographic).
template <class F>
void for_each_small_subset(int n, int k, F&& f) {
  std::vector<int> idx;
  for (int size = 0; size <= std::min(n, k); ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      f(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

std::size_t randomized_family_size(int a, int b, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorKind::Structural, "delta must lie in (0, 1)");
  double p = 1.0;
  if (a + b > 0) {
    const double pa = static_cast<double>(a) / (a + b);
    const double pb = static_cast<double>(b) / (a + b);
    p = std::pow(pa, a) * std::pow(pb, b);
  }
  const double size = std::ceil(std::log(1.0 / delta) / p);
  if (size >= static_cast<double>(kSat)) return kSat;
  return std::max<std::size_t>(1, static_cast<std::size_t>(size));
}

std::size_t exhaustive_family_size(int n, int a, int b) {
  return std::min({full_size(n), ball_size(n, a), ball_size(n, b)});
}

ColoringFamily build_coloring_family(int n, int a, int b, const ColoringConfig& config) {
  if (n < 0 || a < 0 || b < 0 || a > n || b > n)
    fail(ErrorKind::Structural, "coloring parameters must satisfy 0 <= a, b <= n");
  ColoringFamily family{n, a, b, config.mode, {}};
  if (config.mode == ColoringMode::Randomized) {
    const std::size_t size = randomized_family_size(a, b, config.delta);
    if (size > config.cap)
      fail(ErrorKind::Capacity, "randomized coloring family of size " + std::to_string(size) +
                                    " exceeds the cap " + std::to_string(config.cap));
    const double one = (a + b) > 0 ? static_cast<double>(a) / (a + b) : 0.5;
    std::mt19937_64 rng(config.seed);
    family.colorings.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      Coloring c(n);
      for (int v = 0; v < n; ++v)
        c[v] = static_cast<double>(rng() >> 11) * 0x1.0p-53 < one ? 1 : 0;
      family.colorings.push_back(std::move(c));
    }
    return family;
  }

  const std::size_t all = full_size(n);
  const std::size_t ind = ball_size(n, a);
  const std::size_t cmp = ball_size(n, b);
  const std::size_t best = std::min({all, ind, cmp});
  if (best > config.cap)
    fail(ErrorKind::Capacity, "exhaustive coloring family of size " +
                                  (best == kSat ? std::string("> 2^64") : std::to_string(best)) +
                                  " exceeds the cap " + std::to_string(config.cap));
  family.colorings.reserve(best);
  if (best == all) {
    for (std::size_t x = 0; x < all; ++x) {
      Coloring c(n);
      for (int v = 0; v < n; ++v) c[v] = (x >> (n - 1 - v)) & 1U;
      family.colorings.push_back(std::move(c));
    }
  } else if (best == ind) {
    for_each_small_subset(n, a, [&](const std::vector<int>& set) {
      Coloring c(n, 0);
      for (int v : set) c[v] = 1;
      family.colorings.push_back(std::move(c));
    });
  } else {
    for_each_small_subset(n, b, [&](const std::vector<int>& set) {
      Coloring c(n, 1);
      for (int v : set) c[v] = 0;
      family.colorings.push_back(std::move(c));
    });
  }
  return family;
}

// Ternary DP over partial patterns: digit 0 = free, 1 = must be 1, 2 = must be 0.
// covered[s] says some member of the family agrees with the fixed digits of s.
bool verify_covering(const ColoringFamily& family) {
  const int n = family.n;
  if (n > kCoveringCheckMaxN)
    fail(ErrorKind::Guard, "verify_covering supports n <= " + std::to_string(kCoveringCheckMaxN));
  std::vector<std::size_t> pow3(n + 1, 1);
  for (int i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::size_t states = pow3[n];
  std::vector<std::uint8_t> covered(states, 0);
  for (const auto& c : family.colorings) {
    if (static_cast<int>(c.size()) != n) fail(ErrorKind::Structural, "coloring length mismatch");
    std::size_t s = 0;
    for (int v = 0; v < n; ++v) s += pow3[v] * (c[v] ? 1 : 2);
    covered[s] = 1;
  }
  for (std::size_t s = states; s-- > 0;) {
    std::size_t rest = s;
    for (int v = 0; v < n; ++v, rest /= 3) {
      if (rest % 3 == 0) {
        covered[s] = covered[s + pow3[v]] | covered[s + 2 * pow3[v]];
        break;
      }
    }
  }
  for (std::size_t s = 0; s < states; ++s) {
    int ones = 0;
    int zeros = 0;
    std::size_t rest = s;
    for (int v = 0; v < n; ++v, rest /= 3) {
      ones += rest % 3 == 1;
      zeros += rest % 3 == 2;
    }
    if (ones <= family.a && zeros <= family.b && !covered[s]) return false;
  }
  return true;
}

}  // namespace imcsp
