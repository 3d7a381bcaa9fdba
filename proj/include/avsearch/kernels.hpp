#pragma once

#include <cmath>
#include <string>

#include "avsearch/errors.hpp"

namespace avsearch {

/// Afferent weight profile C·exp(-|d|²/c²). Widths are in grid cells.
struct GaussianKernel {
  double C = 1.0;
  double c = 1.0;

  void validate(const std::string& where = "gaussian kernel") const {
    if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError(where + ": C must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError(where + ": c must be > 0");
  }

  friend bool operator==(const GaussianKernel&, const GaussianKernel&) = default;
};

/// Lateral weight profile A·exp(-|d|²/a²) - B·exp(-|d|²/b²).
struct DoGKernel {
  double A = 1.0;
  double B = 0.5;
  double a = 1.0;
  double b = 2.0;

  void validate(const std::string& where = "dog kernel") const {
    auto positive = [&](const char* name, double v) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(where + ": " + name + " must be > 0");
    };
    positive("A", A);
    positive("B", B);
    positive("a", a);
    positive("b", b);
  }

  /// Competition maps need a locally excitatory, widely inhibitory profile.
  void validate_competitive(const std::string& where = "dog kernel") const {
    validate(where);
    if (!(a < b)) throw ConfigError(where + ": competition kernel needs a < b");
  }

  friend bool operator==(const DoGKernel&, const DoGKernel&) = default;
};

inline double evaluate_gaussian(const GaussianKernel& k, double dx, double dy) {
  const double d2 = dx * dx + dy * dy;
  return k.C * std::exp(-d2 / (k.c * k.c));
}

inline double evaluate_dog(const DoGKernel& k, double dx, double dy) {
  const double d2 = dx * dx + dy * dy;
  return k.A * std::exp(-d2 / (k.a * k.a)) - k.B * std::exp(-d2 / (k.b * k.b));
}

}  // namespace avsearch
