#pragma once

#include <optional>
#include <span>
#include <vector>

namespace edeco {

struct ScatteringLengths {
  double a_gg = 0.0;  // m
  double a_ee = 0.0;
  double a_eg = 0.0;
};

/// Atomic-physics inputs for the entangled-state experiment design.
struct SpeciesParams {
  double gamma_sp = 0.0;  // spontaneous decay rate Gamma, 1/s
  double delta_e = 0.0;   // transition energy, eV
  double mass = 0.0;      // kg
  double kappa = 0.0;     // m^3/s, chi = kappa / V
  double k3 = 0.0;        // three-body loss coefficient, m^6/s
  std::optional<ScatteringLengths> scattering;

  /// Non-negativity, plus kappa == kappa_from_scattering within 1e-9
  /// relative when scattering lengths are given.
  void validate() const;
};

/// kappa = (2 pi hbar / m)(a_gg + a_ee - 2 a_eg), in m^3/s.
double kappa_from_scattering(double mass, const ScatteringLengths& a);
/// Collisional phase rate chi = kappa / V, in 1/s.
double chi(double kappa, double volume);

/// Smallest sigma (s) visible with a detectable single-atom rate gamma (1/s)
/// on a transition of delta_e (eV): gamma / (Delta E / hbar)^2.
double single_atom_reach(double gamma_detectable, double delta_e);

struct DesignRates {
  double gravitational = 0.0;  // gamma N^2
  double spontaneous = 0.0;    // N Gamma
  double three_body = 0.0;     // k3 N^3 / V^2
};

struct DesignResult {
  double n_opt = 0.0;
  double v_opt = 0.0;          // m^3
  double gamma_min = 0.0;      // 1/s
  double sigma_min = 0.0;      // s
  double l_max = 0.0;          // m, c gamma_min / Gamma^2
  double creation_time = 0.0;  // s, V / (N kappa)
  DesignRates rates;
  /// kappa / (N V) relative to gamma_min; >= 1 means the creation-time
  /// constraint holds.
  double creation_margin = 0.0;
};

/// Closed-form optimum of: minimize max(Gamma/N, k3 N / V^2) subject to
/// kappa/(N V) >= that value. V = kappa/Gamma, N = kappa/sqrt(k3 Gamma),
/// gamma_min = sqrt(Gamma^3 k3)/kappa.
DesignResult ghz_design(const SpeciesParams& p);

/// Brute-force search of the same program over the (N, V) grid points.
/// Throws ErrorKind::infeasible if no grid point satisfies the constraint.
DesignResult ghz_design_grid(const SpeciesParams& p, std::span<const double> n_grid,
                             std::span<const double> v_grid);

/// Log-spaced grid centred on `center`, spanning `decades` in total with
/// `per_decade` intervals per decade (endpoints included).
std::vector<double> log_grid(double center, double decades, int per_decade);

}  // namespace edeco
