#pragma once

// Seeded Monte Carlo generation of scattering events whose polar angle
// follows dcs_reduced(theta) sin(theta), plus goodness-of-fit helpers.
//
// Events are produced in fixed-size blocks. Block k draws from its own
// mt19937_64 engine seeded with splitmix64(seed + k * golden_gamma), so the
// event sequence depends only on (seed, config) and never on the number of
// worker threads.

#include "ppscat/amplitudes.hpp"
#include "ppscat/constants.hpp"
#include "ppscat/scattering.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppscat {

struct EventRecord {
  double theta = 0.0;    // [0, pi]
  double azimuth = 0.0;  // [0, 2 pi)
};

struct SamplerConfig {
  std::uint64_t n_events = 0;
  std::uint64_t seed = 0;
  std::string mechanism = mechanisms::qed_low_energy_name;
  TwoPhotonInState state = TwoPhotonInState::product_12();
  PhotonEnergy energy{1.0};
  EnergyCheck energy_check = EnergyCheck::Enforce;
};

inline constexpr std::string_view sampler_rng_id = "mt19937_64/splitmix64-blocks";
inline constexpr std::uint64_t sampler_block_size = 4096;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Unnormalized polar-angle density dcs_reduced(theta) sin(theta), in
/// natural DCS units.
class AngularDensity {
public:
  AngularDensity(const SamplerConfig& cfg, const MechanismRegistry& registry);

  [[nodiscard]] double operator()(double theta) const;

  /// Maximum over a 1000-point grid on [0, pi], times 1.01.
  [[nodiscard]] double envelope() const;

  /// Integral of the density over each of n_bins equal-width theta bins,
  /// normalized to sum to one.
  [[nodiscard]] std::vector<double> bin_probabilities(std::size_t n_bins) const;

  /// Integral of the density over [lo, hi].
  [[nodiscard]] double integral(double lo, double hi) const;

private:
  Mechanism mechanism_;
  TwoPhotonInState state_;
  PhotonEnergy energy_;
};

struct SampleRun {
  std::vector<EventRecord> events;
  double envelope = 0.0;
  std::uint64_t proposals = 0;
  [[nodiscard]] double acceptance_ratio() const noexcept
  {
    return proposals == 0 ? 0.0 : static_cast<double>(events.size()) / static_cast<double>(proposals);
  }
};

/// Rejection sampling against a flat envelope. Throws std::invalid_argument
/// for unknown mechanisms, ValidityError for Invalid energies without
/// Force, std::domain_error when the density vanishes everywhere, and
/// std::logic_error if any density value exceeds the envelope.
SampleRun run_sampler(const SamplerConfig& cfg, unsigned threads = 1,
                      const MechanismRegistry& registry = MechanismRegistry::builtin());

std::vector<EventRecord> sample_events(const SamplerConfig& cfg, unsigned threads = 1,
                                       const MechanismRegistry& registry =
                                           MechanismRegistry::builtin());

class InsufficientDataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0.0;
};

/// Pearson chi-square of the binned polar angles against the quadrature bin
/// probabilities of cfg's density. Adjacent bins are merged until each
/// expected count is at least 5.
ChiSquareResult chi_square_fit(std::span<const EventRecord> events, const SamplerConfig& cfg,
                               std::size_t n_bins,
                               const MechanismRegistry& registry = MechanismRegistry::builtin());

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test against the uniform law on [lo, hi].
KsResult ks_test_uniform(std::span<const double> values, double lo, double hi);

}  // namespace ppscat
