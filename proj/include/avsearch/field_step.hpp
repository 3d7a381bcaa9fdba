#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "avsearch/errors.hpp"
#include "avsearch/field_grid.hpp"

namespace avsearch {

/// Explicit Euler parameters for τ·du/dt = -u + input + baseline.
struct StepParams {
  double tau = 10.0;
  double dt = 1.0;
  double baseline = 0.0;

  void validate(const std::string& where = "step") const {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError(where + ": tau must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError(where + ": dt must be > 0");
    if (dt > tau) throw ConfigError(where + ": dt must not exceed tau");
    if (!std::isfinite(baseline)) throw ConfigError(where + ": baseline must be finite");
  }

  friend bool operator==(const StepParams&, const StepParams&) = default;
};

/// Sigma unit update: u' = clamp(u + dt/τ·(-u + lateral + afferent + baseline), 0, u_max).
inline FieldGrid sigma_step(const FieldGrid& u, const FieldGrid& lateral, const FieldGrid& afferent,
                            const StepParams& p) {
  require_same_size(u, lateral);
  require_same_size(u, afferent);
  p.validate();
  const double rate = p.dt / p.tau;
  FieldGrid next(u.size());
  auto uv = u.values();
  auto lv = lateral.values();
  auto av = afferent.values();
  auto out = next.values();
  for (std::size_t i = 0; i < uv.size(); ++i) {
    const double v = uv[i] + rate * (-uv[i] + lv[i] + av[i] + p.baseline);
    out[i] = std::clamp(v, 0.0, kActivityMax);
  }
  return next;
}

/// Sigma-pi unit update. The product input Σ_i w_i·Π u(y) is formed by the
/// caller; the integration itself is the same first-order relaxation.
inline FieldGrid sigmapi_step(const FieldGrid& u, const FieldGrid& lateral, const FieldGrid& product_input,
                              const StepParams& p) {
  return sigma_step(u, lateral, product_input, p);
}

}  // namespace avsearch
