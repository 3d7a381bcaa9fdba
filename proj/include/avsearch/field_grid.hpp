#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "avsearch/errors.hpp"

namespace avsearch {

/// Upper bound of every map activity after a clamped step.
inline constexpr double kActivityMax = 1.0;

/// Lattice position; x is the column, y the row.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// One n×n map of unit activities, stored row-major (row = y).
///
/// The fovea sits at cell (c, c) with c = n / 2, so a cell is read as a
/// displacement from the center in every retinotopic map.
class FieldGrid {
 public:
  FieldGrid() = default;

  explicit FieldGrid(int n, double fill = 0.0) : n_(n) {
    if (n <= 0) {
      throw ConfigError("grid side must be positive");
    }
    data_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill);
  }

  int size() const noexcept { return n_; }
  int center_index() const noexcept { return n_ / 2; }
  Cell center() const noexcept { return {n_ / 2, n_ / 2}; }

  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < n_ && y < n_; }
  bool contains(Cell c) const noexcept { return contains(c.x, c.y); }

  double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  double operator[](Cell c) const noexcept { return data_[index(c.x, c.y)]; }
  double& operator[](Cell c) noexcept { return data_[index(c.x, c.y)]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  double max() const noexcept {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
  }

  double min() const noexcept {
    return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
  }

  FieldGrid& operator+=(const FieldGrid& other) {
    require_same_size(*this, other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  FieldGrid& operator*=(double factor) noexcept {
    for (double& v : data_) v *= factor;
    return *this;
  }

  friend bool operator==(const FieldGrid&, const FieldGrid&) = default;

  friend void require_same_size(const FieldGrid& a, const FieldGrid& b) {
    if (a.n_ != b.n_) {
      throw ConfigError("dimension mismatch: " + std::to_string(a.n_) + "x" + std::to_string(a.n_) +
                        " vs " + std::to_string(b.n_) + "x" + std::to_string(b.n_));
    }
  }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x);
  }

  int n_ = 0;
  std::vector<double> data_;
};

inline FieldGrid operator*(double factor, FieldGrid grid) {
  grid *= factor;
  return grid;
}

inline double max_abs_difference(const FieldGrid& a, const FieldGrid& b) {
  require_same_size(a, b);
  double worst = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) worst = std::max(worst, std::abs(av[i] - bv[i]));
  return worst;
}

/// Shifts the grid content by (dx, dy) cells, filling vacated cells with zero.
inline FieldGrid translated(const FieldGrid& grid, int dx, int dy) {
  FieldGrid out(grid.size());
  const int n = grid.size();
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int sx = x - dx;
      const int sy = y - dy;
      if (grid.contains(sx, sy)) out(x, y) = grid(sx, sy);
    }
  }
  return out;
}

/// Index of the largest value; the first one in row-major order wins ties.
inline Cell argmax_cell(const FieldGrid& grid) {
  auto v = grid.values();
  const auto it = std::max_element(v.begin(), v.end());
  const auto i = static_cast<int>(it - v.begin());
  return {i % grid.size(), i / grid.size()};
}

}  // namespace avsearch
