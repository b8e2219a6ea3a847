#pragma once

// Families of 2-colorings with the splitter guarantee: for every disjoint A, B
// with |A| <= a and |B| <= b some coloring is 1 on A and 0 on B.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace imcsp {

enum class ColoringMode { Exhaustive, Randomized };

struct ColoringConfig {
  ColoringMode mode = ColoringMode::Exhaustive;
  std::uint64_t seed = 0;
  double delta = 1.0 / 1048576.0;  // 2^-20
  std::size_t cap = std::size_t{1} << 16;
};

using Coloring = std::vector<std::uint8_t>;

struct ColoringFamily {
  int n = 0;
  int a = 0;
  int b = 0;
  ColoringMode mode = ColoringMode::Exhaustive;
  std::vector<Coloring> colorings;
};

/// Size of a randomized family: ceil(ln(1/delta) / p), p = (a/(a+b))^a (b/(a+b))^b.
std::size_t randomized_family_size(int a, int b, double delta);

/// Exhaustive mode emits the smallest of: all 2^n colorings, indicators of every
/// set of size <= a, complements of indicators of every set of size <= b.
/// Throws a capacity error when that smallest family exceeds config.cap.
ColoringFamily build_coloring_family(int n, int a, int b, const ColoringConfig& config);

/// Size the exhaustive construction would have (saturating at SIZE_MAX).
std::size_t exhaustive_family_size(int n, int a, int b);

inline constexpr int kCoveringCheckMaxN = 12;

/// Enumerates every disjoint (A, B); guarded by kCoveringCheckMaxN.
bool verify_covering(const ColoringFamily& family);

}  // namespace imcsp
