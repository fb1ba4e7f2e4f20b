#pragma once

// Delayed-coincidence correlations of the in-state and the two-photon
// beam-splitter (Hong-Ou-Mandel) picture of the same interference.

#include "ppscat/constants.hpp"
#include "ppscat/scattering.hpp"

#include <array>
#include <complex>
#include <initializer_list>
#include <utility>

namespace ppscat {

/// Signed projection of (x' - x) on the beam direction, in metres.
struct SeparationAlongBeam {
  double delta = 0.0;

  [[nodiscard]] SeparationAlongBeam reversed() const noexcept { return {-delta}; }
};

/// Polarizations selected in front of the detectors at x and x'.
struct DetectorPolarizations {
  Polarization at_x = Polarization::InPlane;
  Polarization at_x_prime = Polarization::Perp;
};

/// Normalized coincidence rate (unit mean over a period) for polarization 2
/// detected at x and polarization 1 at x':
///   g = 1 + sin(2 phi) cos(2 (E / hbar c) delta + rho).
/// Throws std::invalid_argument if delta is not finite.
double coincidence_probability(const TwoPhotonInState& state, PhotonEnergy energy,
                               SeparationAlongBeam sep);

/// Polarization 1 at x and 2 at x'; identical to exchanging x and x'.
double coincidence_probability_swapped(const TwoPhotonInState& state, PhotonEnergy energy,
                                       SeparationAlongBeam sep);

/// Dispatch on the detector polarizations. Equal polarizations never
/// coincide for this family of states and return 0.
double coincidence_probability(const TwoPhotonInState& state, PhotonEnergy energy,
                               SeparationAlongBeam sep, DetectorPolarizations detectors);

/// Beam-splitter ports; a, b are inputs and c, d outputs, counter-clockwise.
enum class Port : int { A = 0, B = 1, C = 2, D = 3 };

char port_name(Port port) noexcept;

/// Two-photon state over ordered port pairs (port of photon 1, port of photon 2).
class TwoPhotonModeState {
public:
  using Amplitude = std::complex<double>;
  using Entry = std::pair<std::pair<Port, Port>, Amplitude>;

  /// Throws std::invalid_argument unless the squared norm is 1 within 1e-12.
  TwoPhotonModeState(std::initializer_list<Entry> entries);
  explicit TwoPhotonModeState(const std::array<Amplitude, 16>& amplitudes);

  /// (|a>|b> + |b>|a>) / sqrt(2)
  static TwoPhotonModeState symmetric_input();
  /// (|a>|b> - |b>|a>) / sqrt(2)
  static TwoPhotonModeState antisymmetric_input();
  /// |first>|second>
  static TwoPhotonModeState product(Port first, Port second);

  [[nodiscard]] Amplitude amplitude(Port first, Port second) const noexcept
  {
    return amps_[index(first, second)];
  }
  [[nodiscard]] const std::array<Amplitude, 16>& amplitudes() const noexcept { return amps_; }
  [[nodiscard]] double norm() const noexcept;
  /// True when no amplitude above 1e-12 lies outside the given two ports.
  [[nodiscard]] bool supported_on(Port p, Port q) const noexcept;

private:
  static constexpr std::size_t index(Port first, Port second) noexcept
  {
    return static_cast<std::size_t>(first) * 4 + static_cast<std::size_t>(second);
  }
  void check_normalized() const;

  std::array<Amplitude, 16> amps_{};
};

/// |<x|y>|, which is 1 exactly when the states agree up to a global phase.
double overlap_magnitude(const TwoPhotonModeState& x, const TwoPhotonModeState& y) noexcept;

/// 50/50 splitter a -> (c + i d)/sqrt(2), b -> (i c + d)/sqrt(2), applied to
/// each photon. Input must be supported on {a, b}.
TwoPhotonModeState beam_splitter_transform(const TwoPhotonModeState& in_state);

/// Adjoint of beam_splitter_transform; input must be supported on {c, d}.
TwoPhotonModeState inverse_beam_splitter_transform(const TwoPhotonModeState& out_state);

struct HomStatistics {
  double p_coincidence = 0.0;
  double p_both_c = 0.0;
  double p_both_d = 0.0;
};

/// Output-port statistics; the state must be supported on {c, d}.
HomStatistics hom_statistics(const TwoPhotonModeState& out_state);

}  // namespace ppscat
