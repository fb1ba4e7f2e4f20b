#include "ppscat/sampler.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

namespace ppscat {

namespace {

constexpr double pi = std::numbers::pi;

double uniform01(std::mt19937_64& engine) noexcept
{
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept
{
  return splitmix64(seed + block * 0x9E3779B97F4A7C15ULL);
}

struct BlockOutcome {
  std::uint64_t proposals = 0;
  std::exception_ptr error;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

AngularDensity::AngularDensity(const SamplerConfig& cfg, const MechanismRegistry& registry)
    : mechanism_(registry.get(cfg.mechanism)), state_(cfg.state), energy_(cfg.energy)
{
  require_low_energy(cfg.energy, cfg.energy_check);
}

double AngularDensity::operator()(double theta) const
{
  const double dcs = dcs_reduced(state_, mechanism_, energy_, theta, EnergyCheck::Force).value;
  return dcs / natural_dcs_unit(energy_) * std::sin(theta);
}

double AngularDensity::envelope() const
{
  constexpr int points = 1000;
  double peak = 0.0;
  for (int i = 0; i < points; ++i) {
    const double theta = pi * static_cast<double>(i) / (points - 1);
    peak = std::max(peak, (*this)(theta));
  }
  return 1.01 * peak;
}

double AngularDensity::integral(double lo, double hi) const
{
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  return Quadrature::integrate([this](double t) { return (*this)(t); }, lo, hi, 15, 1e-10);
}

std::vector<double> AngularDensity::bin_probabilities(std::size_t n_bins) const
{
  if (n_bins == 0) {
    throw std::invalid_argument("need at least one bin");
  }
  std::vector<double> probs(n_bins);
  double total = 0.0;
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double lo = pi * static_cast<double>(i) / static_cast<double>(n_bins);
    const double hi = pi * static_cast<double>(i + 1) / static_cast<double>(n_bins);
    probs[i] = integral(lo, hi);
    total += probs[i];
  }
  if (!(total > 0.0)) {
    throw std::domain_error("angular density integrates to zero");
  }
  for (double& p : probs) {
    p /= total;
  }
  return probs;
}

SampleRun run_sampler(const SamplerConfig& cfg, unsigned threads,
                      const MechanismRegistry& registry)
{
  const AngularDensity density(cfg, registry);
  SampleRun run;
  if (cfg.n_events == 0) {
    return run;
  }
  run.envelope = density.envelope();
  if (!(run.envelope > 0.0)) {
    throw std::domain_error("angular density vanishes; nothing to sample");
  }

  const std::uint64_t n = cfg.n_events;
  const std::uint64_t n_blocks = (n + sampler_block_size - 1) / sampler_block_size;
  run.events.resize(n);
  std::vector<BlockOutcome> outcomes(n_blocks);
  const double envelope = run.envelope;

  auto run_block = [&](std::uint64_t block) {
    BlockOutcome& outcome = outcomes[block];
    try {
      std::mt19937_64 engine(block_seed(cfg.seed, block));
      const std::uint64_t first = block * sampler_block_size;
      const std::uint64_t last = std::min(n, first + sampler_block_size);
      for (std::uint64_t i = first; i < last; ++i) {
        for (;;) {
          ++outcome.proposals;
          const double theta = pi * uniform01(engine);
          const double height = envelope * uniform01(engine);
          const double f = density(theta);
          if (f > envelope) {
            throw std::logic_error("rejection envelope exceeded at theta = " +
                                   std::to_string(theta));
          }
          if (height < f) {
            run.events[i] = {theta, 2.0 * pi * uniform01(engine)};
            break;
          }
        }
      }
    } catch (...) {
      outcome.error = std::current_exception();
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, threads), n_blocks));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      run_block(b);
    }
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < n_blocks; b += workers) {
          run_block(b);
        }
      });
    }
  }

  for (const BlockOutcome& outcome : outcomes) {
    if (outcome.error) {
      std::rethrow_exception(outcome.error);
    }
    run.proposals += outcome.proposals;
  }
  return run;
}

std::vector<EventRecord> sample_events(const SamplerConfig& cfg, unsigned threads,
                                       const MechanismRegistry& registry)
{
  return run_sampler(cfg, threads, registry).events;
}

ChiSquareResult chi_square_fit(std::span<const EventRecord> events, const SamplerConfig& cfg,
                               std::size_t n_bins, const MechanismRegistry& registry)
{
  if (n_bins < 2) {
    throw std::invalid_argument("chi-square fit needs at least two bins");
  }
  if (events.empty()) {
    throw InsufficientDataError("chi-square fit needs at least one event");
  }
  const AngularDensity density(cfg, registry);
  const std::vector<double> probs = density.bin_probabilities(n_bins);

  std::vector<double> observed(n_bins, 0.0);
  for (const EventRecord& e : events) {
    const auto bin = static_cast<std::size_t>(e.theta / pi * static_cast<double>(n_bins));
    observed[std::min(bin, n_bins - 1)] += 1.0;
  }

  const double total = static_cast<double>(events.size());
  struct Group {
    double observed = 0.0;
    double expected = 0.0;
  };
  std::vector<Group> groups;
  Group pending;
  for (std::size_t i = 0; i < n_bins; ++i) {
    pending.observed += observed[i];
    pending.expected += probs[i] * total;
    if (pending.expected >= 5.0) {
      groups.push_back(pending);
      pending = {};
    }
  }
  if (pending.expected > 0.0 || pending.observed > 0.0) {
    if (groups.empty()) {
      groups.push_back(pending);
    } else {
      groups.back().observed += pending.observed;
      groups.back().expected += pending.expected;
    }
  }
  if (groups.size() < 2) {
    throw InsufficientDataError("too few events for a chi-square fit after merging bins");
  }

  ChiSquareResult result;
  for (const Group& g : groups) {
    const double d = g.observed - g.expected;
    result.statistic += d * d / g.expected;
  }
  result.degrees_of_freedom = groups.size() - 1;
  result.p_value = boost::math::gamma_q(0.5 * static_cast<double>(result.degrees_of_freedom),
                                        0.5 * result.statistic);
  return result;
}

KsResult ks_test_uniform(std::span<const double> values, double lo, double hi)
{
  if (values.empty()) {
    throw InsufficientDataError("KS test needs at least one value");
  }
  if (!(hi > lo)) {
    throw std::invalid_argument("KS test needs lo < hi");
  }
  std::vector<double> u(values.begin(), values.end());
  for (double& v : u) {
    v = (v - lo) / (hi - lo);
  }
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double cdf = std::clamp(u[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }

  // Asymptotic Kolmogorov distribution with the Stephens small-sample shift.
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  if (lambda < 0.2) {
    return {d, 1.0};
  }
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-16) {
      break;
    }
    sign = -sign;
  }
  return {d, std::clamp(2.0 * q, 0.0, 1.0)};
}

}  // namespace ppscat
