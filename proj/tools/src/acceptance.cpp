#include "edeco/cli/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "edeco/cli/commands.hpp"
#include "edeco/constants.hpp"
#include "edeco/decoherence/engine.hpp"
#include "edeco/interferometry/ghz.hpp"
#include "edeco/interferometry/michelson.hpp"
#include "edeco/interferometry/ramsey.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"
#include "edeco/sensitivity/bounds.hpp"
#include "edeco/sensitivity/design.hpp"

namespace edeco::cli {
namespace {

using constants::hbar;

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool physical(const DensityMatrix& rho) {
  return std::abs(rho.trace() - 1.0) <= 1e-10 && rho.hermiticity_error() <= 1e-10 &&
         rho.min_eigenvalue() >= -1e-9;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(n, n);
}

Matrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = {normal(rng), normal(rng)};
  }
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

Operator random_diagonalizable(std::mt19937_64& rng, const HilbertSpace& s) {
  std::uniform_real_distribution<double> level(-2.0, 2.0);
  const auto n = static_cast<Eigen::Index>(s.total_dim());
  const Matrix u = random_unitary(rng, n);
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 0; k < n; ++k) d(k) = level(rng);
  return Operator(s, hbar * u * d.cast<Complex>().asDiagonal() * u.adjoint());
}

CriterionResult solver_cross_check() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> sig(0.05, 0.3);
  double worst = 0.0;
  bool ok = true;
  int cases = 0;
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 4}, {4, 4}, {4, 8}, {8, 8}}) {
    for (bool global : {true, false}) {
      const HilbertSpace sa = HilbertSpace::single("A", da);
      const HilbertSpace sb = HilbertSpace::single("B", db);
      const HilbertSpace full = sa.concat(sb);
      const Operator ha = random_diagonalizable(rng, sa);
      const Operator hb = random_diagonalizable(rng, sb);
      const Operator drive = embed(ha, full) + embed(hb, full);
      DecoherenceSpec deco = global ? DecoherenceSpec::global(sig(rng), drive)
                                    : DecoherenceSpec{sig(rng), {DecoherenceBlock::local(ha, full),
                                                                 DecoherenceBlock::local(hb, full)}};
      EvolutionSpec spec{drive, deco, {}, 1.0, Method::analytic, 0.0};
      const DensityMatrix rho0(full, random_density(rng, static_cast<Eigen::Index>(full.total_dim())));
      const DensityMatrix exact = evolve_analytic(rho0, spec);
      spec.method = Method::stepped;
      spec.step = std::min(spec.duration / 200.0, 0.09 / generator_norm_bound(spec));
      const DensityMatrix stepped = evolve_stepped(rho0, spec);
      const double d = frobenius_distance(exact.matrix(), stepped.matrix());
      worst = std::max(worst, d);
      ok = ok && d <= 1e-8 && physical(exact) && physical(stepped);
      ++cases;
    }
  }
  return {ok, "max distance " + g(worst) + " over " + std::to_string(cases) + " specs (dim <= 64)"};
}

CriterionResult decay_law() {
  const double omega0 = constants::angular_frequency_ev(1.0);
  const Operator h = (hbar * omega0) * atom_projector(kExcited);
  Vector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::normalized(atom_space(), plus));
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k <= 40; ++k) {
    const double x = 0.25 * k;  // sigma omega0^2 t
    const EvolutionSpec spec{h, DecoherenceSpec::global(x / (omega0 * omega0), h), {}, 1.0,
                             Method::analytic, 0.0};
    const DensityMatrix out = evolve_analytic(rho0, spec);
    const double err = std::abs(std::abs(out.matrix()(kGround, kExcited)) - 0.5 * std::exp(-x));
    worst = std::max(worst, err);
    ok = ok && physical(out);
  }
  return {ok && worst <= 1e-9, "max |rho_ge| error " + g(worst) + " over x in [0, 10]"};
}

CriterionResult ramsey_global_invariance() {
  double lo = 1.0;
  double hi = 0.0;
  bool ok = true;
  for (double sigma : {0.0, 1e-40, 1e-30, 1e-20}) {
    RamseyConfig cfg;
    cfg.field = FieldState::fock(12);
    cfg.partition = Partition::global;
    cfg.sigma = sigma;
    const double v = run_ramsey_quantized(cfg).visibility;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ok = ok && physical(ramsey_quantized_stages(cfg, 0.5).final_state);
  }
  return {ok && hi - lo <= 1e-9, "visibility " + g(hi) + ", spread " + g(hi - lo)};
}

CriterionResult michelson_invariance() {
  MichelsonConfig cfg;
  cfg.alpha = 2.0;
  const double complete = 50.0 / (cfg.mode_frequency * cfg.mode_frequency * cfg.arm_time);
  cfg.sigma = complete;
  cfg.partition = Partition::global;
  const MichelsonResult global = run_michelson(cfg);
  cfg.partition = Partition::local;
  const MichelsonResult local = run_michelson(cfg);
  const bool ok = global.mean_photons_out_b <= 1e-8 && std::abs(local.mean_photons_out_a - 2.0) <= 1e-6 &&
                  std::abs(local.mean_photons_out_b - 2.0) <= 1e-6 && physical(global.state_out) &&
                  physical(local.state_out);
  return {ok, "global out_b " + g(global.mean_photons_out_b) + "; local out " +
                  g(local.mean_photons_out_a) + "/" + g(local.mean_photons_out_b)};
}

CriterionResult phase_diffusion() {
  const double d = phase_average_check(2.0, 40, 160);
  const bool ok = d <= 1e-8 && physical(poisson_mixture(4.0, 40));
  return {ok, "distance " + g(d)};
}

CriterionResult ghz_scaling() {
  GhzConfig one;
  one.sigma = 1e-35;
  const double base = run_ghz(one).effective_rate;
  double worst_ratio = 0.0;
  for (std::size_t n : {2u, 10u, 1000u, 100000u}) {
    GhzConfig cfg = one;
    cfg.n_atoms = n;
    worst_ratio = std::max(worst_ratio, rel(run_ghz(cfg).effective_rate / base, double(n) * double(n)));
  }
  double worst_brute = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    GhzConfig cfg;
    cfg.n_atoms = n;
    cfg.sigma = 0.05 / (cfg.omega0 * cfg.omega0);
    cfg.gamma_sp = 0.02;
    cfg.three_body_rate = 0.01;
    cfg.wait = 1.5;
    worst_brute = std::max(worst_brute, std::abs(ghz_coherence_brute_force(cfg) - run_ghz(cfg).coherence));
  }
  return {worst_ratio <= 4.0 * std::numeric_limits<double>::epsilon() && worst_brute <= 1e-9,
          "N^2 ratio error " + g(worst_ratio) + ", brute-force difference " + g(worst_brute)};
}

SpeciesParams strontium() { return find_species("Sr")->params; }

const std::vector<double>& wide_n_grid() {
  static const std::vector<double> grid = log_grid(1e5, 16.0, 100);
  return grid;
}
const std::vector<double>& wide_v_grid() {
  static const std::vector<double> grid = log_grid(1e-14, 16.0, 100);
  return grid;
}

CriterionResult design_point() {
  const SpeciesParams p = strontium();
  const DesignResult d = ghz_design(p);
  const DesignResult grid = ghz_design_grid(p, wide_n_grid(), wide_v_grid());
  const double n_ratio = std::max(d.n_opt / grid.n_opt, grid.n_opt / d.n_opt);
  const DistanceReach reach = distance_reach(d.gamma_min, p.gamma_sp, 1.0);
  const double l = reach.l_decoherence.value_or(0.0);
  const bool ok = rel(d.n_opt, 1e5) <= 1e-12 && n_ratio <= 1.5 && rel(d.v_opt, 1e-14) <= 1e-12 &&
                  rel(d.gamma_min, 1e-8) <= 1e-12 && d.sigma_min >= 1e-39 && d.sigma_min <= 1e-38 &&
                  rel(l, 3e6) <= 0.01;
  return {ok, "n_opt " + g(d.n_opt) + " (grid " + g(grid.n_opt) + "), v_opt " + g(d.v_opt) +
                  ", gamma_min " + g(d.gamma_min) + ", sigma_min " + g(d.sigma_min) + ", L " + g(l)};
}

CriterionResult grid_oracle() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dec(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SpeciesParams p = strontium();
    p.gamma_sp *= std::pow(10.0, dec(rng));
    p.kappa *= std::pow(10.0, dec(rng));
    p.k3 *= std::pow(10.0, dec(rng));
    p.delta_e *= std::pow(10.0, dec(rng));
    const double exact = ghz_design(p).gamma_min;
    const double grid = ghz_design_grid(p, wide_n_grid(), wide_v_grid()).gamma_min;
    worst = std::max(worst, rel(grid, exact));
  }
  return {worst <= 0.05, "max gamma_min disagreement " + g(100.0 * worst) + "% over 100 species"};
}

CriterionResult single_atom() {
  const double s = single_atom_reach(1e-3, 1.0);
  const bool ok = rel(s, 4.33e-34) <= 1e-3 && s >= 1e-34 && s <= 1e-32;
  return {ok, "sigma " + g(s) + " s"};
}

CriterionResult matterwave() {
  const MatterwaveBound b = matterwave_bound(3.82e-26, 3000.0, 20e-6, constants::planck_time, 1.0);
  const double len = b.decoherence_length.value_or(0.0);
  const bool ok = b.rate >= 3e7 && b.rate <= 1.5e8 && len >= 20e-6 && len <= 100e-6 && b.excluded;
  return {ok, "rate " + g(b.rate) + " /s, length " + g(len * 1e6) + " um, excluded " +
                  (b.excluded ? "true" : "false")};
}

CriterionResult cosmic() {
  const double e = cosmic_bound(constants::planck_time, 1e10 * constants::julian_year);
  return {e >= 2e-3 && e <= 10e-3, "delta_e " + g(e * 1e3) + " meV"};
}

CriterionResult detuned_global() {
  const double omega0 = constants::angular_frequency_ev(1.0);
  double worst = 0.0;
  for (double ratio : {1e-3, 1e-2}) {
    RamseyConfig cfg;
    cfg.field = FieldState::fock(12);
    cfg.partition = Partition::global;
    cfg.detuning = ratio * omega0;
    cfg.wait = 1e-9;
    const double base = run_ramsey_quantized(cfg).visibility;
    cfg.sigma = 0.5 / (cfg.detuning * cfg.detuning * cfg.wait);
    const double v = run_ramsey_quantized(cfg).visibility;
    const double rate = -std::log(v / base) / cfg.wait;
    worst = std::max(worst, rel(rate, cfg.sigma * cfg.detuning * cfg.detuning));
  }
  return {worst <= 1e-6, "max relative rate error " + g(worst)};
}

CriterionResult cli_determinism() {
  RunConfig cfg;
  cfg.command = Command::design;
  cfg.parameters["species"] = "Sr";
  const Rendered a = render(run_command(cfg));
  const Rendered b = render(run_command(cfg));
  const bool same = a.csv == b.csv && a.json == b.json;
  const Json parsed = Json::parse(a.json);
  const bool round_trip = parsed.dump(2) + "\n" == a.json &&
                          parsed["summary"]["closed_form"]["n_opt"].get<double>() == ghz_design(strontium()).n_opt;
  return {same && round_trip, std::string("design output ") + (same ? "identical" : "differs") +
                                  ", JSON round trip " + (round_trip ? "lossless" : "lossy")};
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria{
      {1, "solver cross-check", 10.0, solver_cross_check},
      {2, "single-superposition decay law", 1.0, decay_law},
      {3, "global invariance (Ramsey)", 30.0, ramsey_global_invariance},
      {4, "global invariance (Michelson)", 30.0, michelson_invariance},
      {5, "phase-diffusion identity", 5.0, phase_diffusion},
      {6, "GHZ N^2 law", 10.0, ghz_scaling},
      {7, "design point", 5.0, design_point},
      {8, "closed form vs grid oracle", 60.0, grid_oracle},
      {9, "single-atom reach", 1.0, single_atom},
      {10, "matter-wave bound", 1.0, matterwave},
      {11, "cosmic bound", 1.0, cosmic},
      {12, "detuned global decoherence", 30.0, detuned_global},
      {13, "CLI determinism and round trip", 10.0, cli_determinism},
  };
  return criteria;
}

}  // namespace edeco::cli
