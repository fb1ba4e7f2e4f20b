#include "doctest.h"
#include "oracles.hpp"

#include "ppscat/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ppscat;
using std::numbers::pi;

namespace {

SamplerConfig config(std::uint64_t n, std::uint64_t seed, TwoPhotonInState state)
{
  SamplerConfig cfg;
  cfg.n_events = n;
  cfg.seed = seed;
  cfg.state = state;
  return cfg;
}

double fraction_in(const std::vector<EventRecord>& events, double lo, double hi)
{
  std::size_t k = 0;
  for (const auto& e : events) {
    k += (e.theta >= lo && e.theta <= hi) ? 1 : 0;
  }
  return static_cast<double>(k) / static_cast<double>(events.size());
}

}  // namespace

TEST_CASE("zero events")
{
  const auto run = run_sampler(config(0, 1, TwoPhotonInState::product_12()));
  CHECK(run.events.empty());
  CHECK(run.acceptance_ratio() == 0.0);
}

TEST_CASE("splitmix64 reference values")
{
  // First two outputs of the reference generator seeded with 0.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(0x9E3779B97F4A7C15ULL) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("events are in range and reproducible")
{
  const auto cfg = config(20000, 42, TwoPhotonInState::bell_plus());
  const auto a = sample_events(cfg, 1);
  const auto b = sample_events(cfg, 1);
  const auto c = sample_events(cfg, 3);
  const auto d = sample_events(cfg, 8);
  REQUIRE(a.size() == 20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta >= 0.0);
    CHECK(a[i].theta <= pi);
    CHECK(a[i].azimuth >= 0.0);
    CHECK(a[i].azimuth < 2.0 * pi);
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].theta == c[i].theta);
    CHECK(a[i].azimuth == d[i].azimuth);
  }
  const auto other = sample_events(config(20000, 43, TwoPhotonInState::bell_plus()));
  CHECK(other[0].theta != a[0].theta);
}

TEST_CASE("polar angle distribution is forward-backward symmetric")
{
  const auto events = sample_events(config(1000000, 7, TwoPhotonInState::product_12()));
  double sum = 0.0, sum2 = 0.0;
  for (const auto& e : events) {
    const double x = std::cos(e.theta);
    sum += x;
    sum2 += x * x;
  }
  const double n = static_cast<double>(events.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean) < 5.0 * se);
}

TEST_CASE("antisymmetric state depletes the right angle")
{
  const double lo = angles::deg_to_rad(88.0);
  const double hi = angles::deg_to_rad(92.0);
  const std::uint64_t n = 400000;
  const auto minus = sample_events(config(n, 11, TwoPhotonInState::bell_minus()));
  const auto product = sample_events(config(n, 11, TwoPhotonInState::product_12()));
  const double f_minus = fraction_in(minus, lo, hi);
  const double f_product = fraction_in(product, lo, hi);
  CHECK(f_minus < f_product);

  // Expected fractions from an independent quadrature of the closed form.
  const auto expected = [&](double s) {
    const auto w = [s](double t) { return oracle::qed_natural(s, std::cos(t)) * std::sin(t); };
    return oracle::simpson(w, lo, hi, 200) / oracle::simpson(w, 0.0, pi, 2000);
  };
  for (const auto& [f, s] : {std::pair{f_minus, -1.0}, std::pair{f_product, 0.0}}) {
    const double p = expected(s);
    CHECK(std::abs(f - p) < 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
  }
}

TEST_CASE("chi-square goodness of fit")
{
  const auto cfg = config(100000, 5, TwoPhotonInState::bell_minus());
  const auto events = sample_events(cfg);
  const auto self = chi_square_fit(events, cfg, 30);
  CHECK(self.degrees_of_freedom == 29);
  CHECK(self.p_value > 1e-4);

  const auto cross = chi_square_fit(events, config(0, 0, TwoPhotonInState::bell_plus()), 30);
  CHECK(cross.p_value < 1e-6);

  CHECK_THROWS_AS(chi_square_fit({}, cfg, 30), InsufficientDataError);
  CHECK_THROWS_AS(chi_square_fit(events, cfg, 1), std::invalid_argument);
  const std::vector<EventRecord> few(3, EventRecord{1.0, 1.0});
  CHECK_THROWS_AS(chi_square_fit(few, cfg, 30), InsufficientDataError);
}

TEST_CASE("bin probabilities against quadrature")
{
  const AngularDensity density(config(0, 0, TwoPhotonInState::product_12()),
                               MechanismRegistry::builtin());
  const auto probs = density.bin_probabilities(12);
  const auto w = [](double t) { return oracle::qed_natural(0.0, std::cos(t)) * std::sin(t); };
  const double total = oracle::simpson(w, 0.0, pi, 4000);
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = oracle::simpson(w, pi * i / 12.0, pi * (i + 1) / 12.0, 400) / total;
    CHECK(std::abs(probs[i] - p) < 1e-9);
    sum += probs[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(density.integral(0.0, pi) / oracle::qed_product_total_natural() ==
        doctest::Approx(1.0 / pi).epsilon(1e-9));
}

TEST_CASE("envelope bounds the density")
{
  for (const auto& state : {TwoPhotonInState::product_12(), TwoPhotonInState::bell_plus(),
                            TwoPhotonInState::bell_minus()}) {
    const AngularDensity density(config(0, 0, state), MechanismRegistry::builtin());
    double peak = 0.0;
    for (int i = 0; i <= 100000; ++i) {
      peak = std::max(peak, density(pi * i / 100000.0));
    }
    CHECK(peak <= density.envelope());
  }
  const auto run = run_sampler(config(50000, 3, TwoPhotonInState::bell_plus()));
  CHECK(run.proposals >= run.events.size());
  CHECK(run.acceptance_ratio() > 0.3);
  CHECK(run.acceptance_ratio() <= 1.0);
}

TEST_CASE("azimuth is uniform")
{
  const auto events = sample_events(config(100000, 9, TwoPhotonInState::bell_plus()));
  std::vector<double> az;
  az.reserve(events.size());
  for (const auto& e : events) {
    az.push_back(e.azimuth);
  }
  CHECK(ks_test_uniform(az, 0.0, 2.0 * pi).p_value > 1e-3);

  std::vector<double> skewed;
  for (const auto& e : events) {
    skewed.push_back(e.azimuth * e.azimuth / (2.0 * pi));
  }
  CHECK(ks_test_uniform(skewed, 0.0, 2.0 * pi).p_value < 1e-6);
  CHECK_THROWS_AS(ks_test_uniform({}, 0.0, 1.0), InsufficientDataError);
}

TEST_CASE("Kolmogorov p-value reference points")
{
  // For large n the p-value depends only on sqrt(n) D; 1.36 and 1.63 are the
  // textbook 5% and 1% critical values.
  std::vector<double> grid(100000);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(grid.size());
  }
  CHECK(ks_test_uniform(grid, 0.0, 1.0).p_value == 1.0);

  const auto shifted = [&](double lambda) {
    std::vector<double> v(grid);
    const double shift = lambda / std::sqrt(static_cast<double>(v.size()));
    for (double& x : v) {
      x = std::min(x + shift, 1.0);
    }
    return ks_test_uniform(v, 0.0, 1.0).p_value;
  };
  CHECK(shifted(1.36) == doctest::Approx(0.05).epsilon(0.05));
  CHECK(shifted(1.63) == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("sampler error paths")
{
  auto cfg = config(10, 1, TwoPhotonInState::product_12());
  cfg.mechanism = "no-such-mechanism";
  CHECK_THROWS_AS(run_sampler(cfg), std::invalid_argument);

  cfg = config(10, 1, TwoPhotonInState::product_12());
  cfg.energy = PhotonEnergy(2.0 * PhysicalConstants::electron_mass_energy);
  CHECK_THROWS_AS(run_sampler(cfg), ValidityError);
  cfg.energy_check = EnergyCheck::Force;
  CHECK(run_sampler(cfg).events.size() == 10);

  MechanismRegistry registry;
  registry.add(mechanisms::null_mechanism());
  cfg = config(10, 1, TwoPhotonInState::product_12());
  cfg.mechanism = mechanisms::null_mechanism().name();
  CHECK_THROWS_AS(run_sampler(cfg, 1, registry), std::domain_error);
}
