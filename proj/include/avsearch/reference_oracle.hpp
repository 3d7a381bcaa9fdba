#pragma once

// Ground-truth sums for tests and `verify`. Deliberately literal: no kernel
// tables, no factorization, no transforms, fixed loop order.

#include <cmath>

#include "avsearch/field_grid.hpp"
#include "avsearch/kernels.hpp"

namespace avsearch::oracle {

inline FieldGrid brute_force_lateral(const FieldGrid& grid, const DoGKernel& k) {
  const int n = grid.size();
  FieldGrid out(n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double sum = 0.0;
      for (int yp = 0; yp < n; ++yp) {
        for (int xp = 0; xp < n; ++xp) {
          const double dx = x - xp;
          const double dy = y - yp;
          const double d2 = dx * dx + dy * dy;
          const double w = k.A * std::exp(-d2 / (k.a * k.a)) - k.B * std::exp(-d2 / (k.b * k.b));
          sum += w * grid(xp, yp);
        }
      }
      out(x, y) = sum;
    }
  }
  return out;
}

inline FieldGrid brute_force_anticipation(const FieldGrid& wm, const FieldGrid& focus, double beta) {
  require_same_size(wm, focus);
  const int n = wm.size();
  const int c = n / 2;
  FieldGrid out(n);
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x0 = 0; x0 < n; ++x0) {
      double sum = 0.0;
      for (int y1 = 0; y1 < n; ++y1) {
        for (int y0 = 0; y0 < n; ++y0) {
          // focus sampled at center + (y - x); both vectors must stay on the lattice
          const int f0 = c + (y0 - x0);
          const int f1 = c + (y1 - x1);
          if (f0 >= 0 && f0 < n && f1 >= 0 && f1 < n) sum += wm(y0, y1) * focus(f0, f1);
        }
      }
      out(x0, x1) = beta * sum;
    }
  }
  return out;
}

}  // namespace avsearch::oracle
