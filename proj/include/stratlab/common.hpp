#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stratlab {

/// Maximum number of exponential coordinates a shipped group instance may use.
inline constexpr int kMaxDim = 8;

/// Fixed-capacity coordinate vector. Value type, cheap to copy in hot loops.
struct Coords {
  std::array<double, kMaxDim> v{};
  int n = 0;

  Coords() = default;
  Coords(std::initializer_list<double> init) {
    if (init.size() > static_cast<std::size_t>(kMaxDim))
      throw std::invalid_argument("Coords: more than " + std::to_string(kMaxDim) + " entries");
    n = static_cast<int>(init.size());
    int i = 0;
    for (double x : init) v[static_cast<std::size_t>(i++)] = x;
  }
  static Coords zeros(int dim) {
    if (dim < 1 || dim > kMaxDim)
      throw std::invalid_argument("Coords: dimension must be in [1," + std::to_string(kMaxDim) + "]");
    Coords c;
    c.n = dim;
    return c;
  }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  int size() const { return n; }

  bool all_finite() const {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(v[static_cast<std::size_t>(i)])) return false;
    return true;
  }
};

inline bool operator==(const Coords& a, const Coords& b) {
  if (a.n != b.n) return false;
  for (int i = 0; i < a.n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/// Lexicographic order on coordinates; used for canonical ball ordering.
inline bool lex_less(const Coords& a, const Coords& b) {
  for (int i = 0; i < a.n && i < b.n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.n < b.n;
}

[[noreturn]] inline void contract_violation(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

}  // namespace stratlab
