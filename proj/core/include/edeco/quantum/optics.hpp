#pragma once

#include <cstddef>
#include <string>

#include "edeco/quantum/types.hpp"

namespace edeco {

inline constexpr double kCutoffDeficit = 1e-10;

/// Fock truncation n_max = ceil(|alpha|^2 + 8|alpha| + 10).
std::size_t fock_cutoff(Complex alpha);

/// Poisson probability mass beyond n_max for mean photon number |alpha|^2.
double poisson_tail(double mean, std::size_t n_max);

/// Truncated coherent state on a single mode of dimension n_max + 1,
/// renormalized after truncation. Throws ErrorKind::cutoff when the discarded
/// norm exceeds kCutoffDeficit.
PureState coherent_state(Complex alpha, std::size_t n_max, const std::string& label = "mode");

PureState fock_state(std::size_t n, std::size_t n_max, const std::string& label = "mode");

struct ModeOperators {
  Operator annihilation;
  Operator number;
};

ModeOperators mode_ops(std::size_t n_max, const std::string& label = "mode");

/// Balanced beamsplitter on two modes (each truncated at n_max), mapping the
/// input description (a, b) to the arm description (c, d) with
/// a = (c + d)/sqrt(2), b = (c - d)/sqrt(2). Exact on every total-photon
/// sector with N <= n_max.
Operator beamsplitter(std::size_t n_max, const std::string& first, const std::string& second);

// Two-level atom helpers; basis order is (|g>, |e>).
inline constexpr Eigen::Index kGround = 0;
inline constexpr Eigen::Index kExcited = 1;

HilbertSpace atom_space(const std::string& label = "atom");
Operator atom_projector(Eigen::Index level, const std::string& label = "atom");
/// |g><e|
Operator atom_lowering(const std::string& label = "atom");

}  // namespace edeco
