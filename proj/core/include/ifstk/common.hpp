#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ifstk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// e^{2*pi*i*theta} with theta reduced mod 1 first, so the argument passed to
// sin/cos stays in [-pi, pi] even for very large theta.
inline cplx unit_phase(double theta) {
  const double r = std::remainder(theta, 1.0);
  return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

// Fixed-order pairwise (tree) summation. The reduction order depends only on
// the element order, never on chunking or thread count.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

// splitmix64; used as a counter-based generator so that draw i is a pure
// function of (seed, i).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draw in [0,1) from a (seed, counter) pair.
inline double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t z = splitmix64(seed ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace ifstk
