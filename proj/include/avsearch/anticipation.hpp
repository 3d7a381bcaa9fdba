#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "avsearch/errors.hpp"
#include "avsearch/field_grid.hpp"
#include "avsearch/field_step.hpp"

namespace avsearch {

enum class CorrelationMethod { Naive, Fft };

namespace detail {

/// FFTW's planner is not reentrant; execution on distinct arrays is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Linear 2D cross-correlation of two n×n grids through a (2n-1)² real
/// transform. One instance per thread and grid size; plans are reused.
class CrossCorrelator {
 public:
  explicit CrossCorrelator(int n) : n_(n), m_(2 * n - 1), spectrum_len_(m_ * (m_ / 2 + 1)) {
    real_a_ = fftw_alloc_real(static_cast<std::size_t>(m_) * m_);
    real_b_ = fftw_alloc_real(static_cast<std::size_t>(m_) * m_);
    spec_a_ = fftw_alloc_complex(static_cast<std::size_t>(spectrum_len_));
    spec_b_ = fftw_alloc_complex(static_cast<std::size_t>(spectrum_len_));
    std::lock_guard lock(fftw_planner_mutex());
    forward_a_ = fftw_plan_dft_r2c_2d(m_, m_, real_a_, spec_a_, FFTW_ESTIMATE);
    forward_b_ = fftw_plan_dft_r2c_2d(m_, m_, real_b_, spec_b_, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_2d(m_, m_, spec_a_, real_a_, FFTW_ESTIMATE);
  }

  CrossCorrelator(const CrossCorrelator&) = delete;
  CrossCorrelator& operator=(const CrossCorrelator&) = delete;

  ~CrossCorrelator() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_a_);
    fftw_destroy_plan(forward_b_);
    fftw_destroy_plan(inverse_);
    fftw_free(real_a_);
    fftw_free(real_b_);
    fftw_free(spec_a_);
    fftw_free(spec_b_);
  }

  /// corr(d) = Σ_k probe(k)·signal(k + d) for every d in (-n, n)², stored at
  /// index d mod (2n-1).
  const double* correlate(const FieldGrid& signal, const FieldGrid& probe) {
    load(signal, real_a_);
    load(probe, real_b_);
    fftw_execute(forward_a_);
    fftw_execute(forward_b_);
    const double scale = 1.0 / (static_cast<double>(m_) * m_);
    for (int i = 0; i < spectrum_len_; ++i) {
      const double ar = spec_a_[i][0], ai = spec_a_[i][1];
      const double br = spec_b_[i][0], bi = -spec_b_[i][1];
      spec_a_[i][0] = (ar * br - ai * bi) * scale;
      spec_a_[i][1] = (ar * bi + ai * br) * scale;
    }
    fftw_execute(inverse_);
    return real_a_;
  }

  int padded() const noexcept { return m_; }

 private:
  void load(const FieldGrid& g, double* dst) const {
    std::fill(dst, dst + static_cast<std::ptrdiff_t>(m_) * m_, 0.0);
    for (int y = 0; y < n_; ++y) {
      for (int x = 0; x < n_; ++x) dst[static_cast<std::ptrdiff_t>(y) * m_ + x] = g(x, y);
    }
  }

  int n_;
  int m_;
  int spectrum_len_;
  double* real_a_ = nullptr;
  double* real_b_ = nullptr;
  fftw_complex* spec_a_ = nullptr;
  fftw_complex* spec_b_ = nullptr;
  fftw_plan forward_a_ = nullptr;
  fftw_plan forward_b_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

inline CrossCorrelator& thread_correlator(int n) {
  thread_local std::map<int, std::unique_ptr<CrossCorrelator>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<CrossCorrelator>(n);
  return *slot;
}

}  // namespace detail

/// Anticipation input I(x) = β·Σ_y wm(y)·focus(c + y - x).
///
/// The focus index is anchored at the grid center c, so a focus bump at
/// displacement s shifts every memory bump by -s. Terms whose focus index
/// leaves the lattice are dropped.
inline FieldGrid anticipation_input(const FieldGrid& wm, const FieldGrid& focus, double beta,
                                    CorrelationMethod method = CorrelationMethod::Fft) {
  require_same_size(wm, focus);
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
  const int n = wm.size();
  const int c = wm.center_index();
  FieldGrid out(n);
  if (beta == 0.0 || wm.is_zero() || focus.is_zero()) return out;

  if (method == CorrelationMethod::Naive) {
    for (int x1 = 0; x1 < n; ++x1) {
      for (int x0 = 0; x0 < n; ++x0) {
        double acc = 0.0;
        for (int y1 = 0; y1 < n; ++y1) {
          for (int y0 = 0; y0 < n; ++y0) {
            const int f0 = c + y0 - x0;
            const int f1 = c + y1 - x1;
            if (f0 < 0 || f1 < 0 || f0 >= n || f1 >= n) continue;
            acc += wm(y0, y1) * focus(f0, f1);
          }
        }
        out(x0, x1) = beta * acc;
      }
    }
    return out;
  }

  // With k = c + y - x: I(x) = β·Σ_k focus(k)·wm(k + (x - c)).
  auto& corr = detail::thread_correlator(n);
  const double* r = corr.correlate(wm, focus);
  const int m = corr.padded();
  for (int x1 = 0; x1 < n; ++x1) {
    const int d1 = ((x1 - c) % m + m) % m;
    for (int x0 = 0; x0 < n; ++x0) {
      const int d0 = ((x0 - c) % m + m) % m;
      out(x0, x1) = beta * r[static_cast<std::ptrdiff_t>(d1) * m + d0];
    }
  }
  return out;
}

/// Anticipation map relaxation: τ·du/dt = -u + input, no lateral term.
inline FieldGrid step_anticipation(const FieldGrid& u, const FieldGrid& input, const StepParams& p) {
  return sigmapi_step(u, FieldGrid(u.size()), input, p);
}

}  // namespace avsearch
