#include "edeco/sensitivity/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"

namespace edeco {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be finite and > 0");
  }
}

DesignResult evaluate(const SpeciesParams& p, double n, double v, double gamma) {
  const double omega = constants::angular_frequency_ev(p.delta_e);
  DesignResult r;
  r.n_opt = n;
  r.v_opt = v;
  r.gamma_min = gamma;
  r.sigma_min = gamma / (omega * omega);
  r.l_max = constants::speed_of_light * gamma / (p.gamma_sp * p.gamma_sp);
  r.creation_time = v / (n * p.kappa);
  r.rates = DesignRates{gamma * n * n, n * p.gamma_sp, p.k3 * n * n * n / (v * v)};
  r.creation_margin = p.kappa / (n * v) / gamma;
  return r;
}

void require_design_inputs(const SpeciesParams& p) {
  p.validate();
  require_positive(p.gamma_sp, "gamma_sp");
  require_positive(p.kappa, "kappa");
  require_positive(p.k3, "k3");
  require_positive(p.delta_e, "delta_e");
}

}  // namespace

void SpeciesParams::validate() const {
  for (double v : {gamma_sp, delta_e, mass, kappa, k3}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::invalid_argument, "species parameters must be finite and >= 0");
    }
  }
  if (scattering) {
    const ScatteringLengths& a = *scattering;
    if (a.a_gg < 0.0 || a.a_ee < 0.0 || a.a_eg < 0.0) {
      throw Error(ErrorKind::invalid_argument, "scattering lengths must be >= 0");
    }
    const double derived = kappa_from_scattering(mass, a);
    if (std::abs(derived - kappa) > 1e-9 * std::max(std::abs(kappa), std::abs(derived))) {
      throw Error(ErrorKind::invalid_argument,
                  "kappa disagrees with the value derived from scattering lengths");
    }
  }
}

double kappa_from_scattering(double mass, const ScatteringLengths& a) {
  require_positive(mass, "mass");
  return 2.0 * constants::pi * constants::hbar / mass * (a.a_gg + a.a_ee - 2.0 * a.a_eg);
}

double chi(double kappa, double volume) {
  require_positive(volume, "volume");
  return kappa / volume;
}

double single_atom_reach(double gamma_detectable, double delta_e) {
  require_positive(gamma_detectable, "gamma");
  require_positive(delta_e, "delta_e");
  const double omega = constants::angular_frequency_ev(delta_e);
  return gamma_detectable / (omega * omega);
}

DesignResult ghz_design(const SpeciesParams& p) {
  require_design_inputs(p);
  const double v = p.kappa / p.gamma_sp;
  const double n = p.kappa / std::sqrt(p.k3 * p.gamma_sp);
  const double gamma = std::sqrt(p.gamma_sp * p.gamma_sp * p.gamma_sp * p.k3) / p.kappa;
  return evaluate(p, n, v, gamma);
}

DesignResult ghz_design_grid(const SpeciesParams& p, std::span<const double> n_grid,
                             std::span<const double> v_grid) {
  require_design_inputs(p);
  if (n_grid.empty() || v_grid.empty()) {
    throw Error(ErrorKind::invalid_argument, "design grids must be non-empty");
  }
  constexpr double kFeasibleSlack = 1e-12;
  double best = std::numeric_limits<double>::infinity();
  double best_n = 0.0;
  double best_v = 0.0;
  for (double v : v_grid) {
    require_positive(v, "grid volume");
    const double k3_over_v2 = p.k3 / (v * v);
    for (double n : n_grid) {
      require_positive(n, "grid atom number");
      const double bound = std::max(p.gamma_sp / n, k3_over_v2 * n);
      if (bound >= best) continue;
      if (p.kappa / (n * v) < bound * (1.0 - kFeasibleSlack)) continue;
      best = bound;
      best_n = n;
      best_v = v;
    }
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::infeasible, "no grid point satisfies the creation-time constraint");
  }
  return evaluate(p, best_n, best_v, best);
}

std::vector<double> log_grid(double center, double decades, int per_decade) {
  require_positive(center, "grid center");
  require_positive(decades, "grid span");
  if (per_decade < 1) throw Error(ErrorKind::invalid_argument, "per_decade must be >= 1");
  const auto intervals = static_cast<long>(std::llround(decades * per_decade));
  const double lo = std::log10(center) - 0.5 * decades;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(intervals + 1));
  for (long k = 0; k <= intervals; ++k) {
    out.push_back(std::pow(10.0, lo + static_cast<double>(k) / per_decade));
  }
  return out;
}

}  // namespace edeco
