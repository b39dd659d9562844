#include "edeco/sensitivity/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"

namespace edeco {
namespace {

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be finite and >= 0");
  }
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

MatterwaveBound matterwave_bound(double mass, double velocity, double path_separation,
                                 double sigma, double flight_length) {
  require_positive(mass, "mass");
  require_positive(velocity, "velocity");
  require_positive(path_separation, "path_separation");
  require_non_negative(sigma, "sigma");
  require_positive(flight_length, "flight_length");

  const double c = constants::speed_of_light;
  const double omega = mass * c * c / constants::hbar;
  MatterwaveBound out;
  out.rate = sigma * omega * omega;
  if (out.rate > 0.0) {
    out.decoherence_length = velocity / out.rate;
    out.excluded = *out.decoherence_length < flight_length;
  }
  return out;
}

DistanceReach distance_reach(double gamma, double gamma_sp, double coherence_time) {
  require_non_negative(gamma, "gamma");
  require_non_negative(gamma_sp, "gamma_sp");
  require_non_negative(coherence_time, "coherence_time");
  const double c = constants::speed_of_light;
  DistanceReach out;
  out.l_laser = c * coherence_time;
  out.l_max = out.l_laser;
  if (gamma > 0.0 && gamma_sp > 0.0) {
    out.l_decoherence = c * gamma / (gamma_sp * gamma_sp);
    out.l_max = std::min(out.l_max, *out.l_decoherence);
  }
  return out;
}

double cosmic_bound(double sigma, double age) {
  require_positive(sigma, "sigma");
  require_positive(age, "age");
  return constants::hbar / std::sqrt(sigma * age) / constants::electron_volt;
}

}  // namespace edeco
