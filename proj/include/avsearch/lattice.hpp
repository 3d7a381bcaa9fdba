#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "avsearch/field_grid.hpp"
#include "avsearch/kernels.hpp"

namespace avsearch {

enum class LateralMethod { Naive, Separable };

namespace detail {

/// Taps beyond this radius fall below 1e-16 of the amplitude.
inline int gaussian_reach(double width, int n) {
  const double r = std::ceil(width * std::sqrt(16.0 * std::log(10.0)));
  return static_cast<int>(std::min<double>(r, n - 1));
}

inline std::vector<double> gaussian_taps(double width, int radius) {
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  for (int t = -radius; t <= radius; ++t) {
    taps[static_cast<std::size_t>(t + radius)] = std::exp(-static_cast<double>(t * t) / (width * width));
  }
  return taps;
}

/// out += amplitude · Σ_y exp(-|x-y|²/width²) · in(y), zero-padded.
///
/// The 2D Gaussian factorizes, so a row pass followed by a column pass gives
/// the full sum in O(n³) instead of O(n⁴).
inline void accumulate_gaussian(const FieldGrid& in, double amplitude, double width, FieldGrid& out,
                                std::vector<double>& scratch) {
  const int n = in.size();
  const int r = gaussian_reach(width, n);
  const auto taps = gaussian_taps(width, r);
  scratch.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  const double* src = in.values().data();

  for (int y = 0; y < n; ++y) {
    const double* row = src + static_cast<std::ptrdiff_t>(y) * n;
    double* dst = scratch.data() + static_cast<std::ptrdiff_t>(y) * n;
    for (int x = 0; x < n; ++x) {
      const int lo = std::max(0, x - r);
      const int hi = std::min(n - 1, x + r);
      double acc = 0.0;
      for (int xs = lo; xs <= hi; ++xs) acc += taps[static_cast<std::size_t>(x - xs + r)] * row[xs];
      dst[x] = acc;
    }
  }

  double* res = out.values().data();
  for (int y = 0; y < n; ++y) {
    const int lo = std::max(0, y - r);
    const int hi = std::min(n - 1, y + r);
    double* dst = res + static_cast<std::ptrdiff_t>(y) * n;
    for (int ys = lo; ys <= hi; ++ys) {
      const double w = amplitude * taps[static_cast<std::size_t>(y - ys + r)];
      const double* col = scratch.data() + static_cast<std::ptrdiff_t>(ys) * n;
      for (int x = 0; x < n; ++x) dst[x] += w * col[x];
    }
  }
}

}  // namespace detail

/// Σ_{x'} C·exp(-|x-x'|²/c²)·u(x') over the lattice (separable path).
inline FieldGrid gaussian_input(const FieldGrid& grid, const GaussianKernel& kernel) {
  FieldGrid out(grid.size());
  std::vector<double> scratch;
  detail::accumulate_gaussian(grid, kernel.C, kernel.c, out, scratch);
  return out;
}

/// Lateral term Σ_{x'} w(x-x')·u(x') with zero padding outside the lattice.
///
/// The naive path evaluates every pair literally. The separable path splits
/// the DoG into two factorized Gaussians; it stays within 1e-9 of the naive
/// sum because taps are only dropped once they are below 1e-16 relative.
inline FieldGrid lateral_input(const FieldGrid& grid, const DoGKernel& kernel,
                               LateralMethod method = LateralMethod::Separable) {
  const int n = grid.size();
  FieldGrid out(n);
  if (method == LateralMethod::Naive) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int ys = 0; ys < n; ++ys) {
          for (int xs = 0; xs < n; ++xs) {
            acc += evaluate_dog(kernel, x - xs, y - ys) * grid(xs, ys);
          }
        }
        out(x, y) = acc;
      }
    }
    return out;
  }
  std::vector<double> scratch;
  detail::accumulate_gaussian(grid, kernel.A, kernel.a, out, scratch);
  detail::accumulate_gaussian(grid, -kernel.B, kernel.b, out, scratch);
  return out;
}

}  // namespace avsearch
