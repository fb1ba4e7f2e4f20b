#include "ppscat/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppscat {

double coincidence_probability(const TwoPhotonInState& state, PhotonEnergy energy,
                               SeparationAlongBeam sep)
{
  if (!std::isfinite(sep.delta)) {
    throw std::invalid_argument("separation must be finite");
  }
  const double phase = 2.0 * sep.delta / energy.reduced_wavelength();
  const auto [sin_x, cos_x] = angles::sincos(phase);
  const auto [sin_rho, cos_rho] = angles::sincos(state.rho());
  const double modulation = cos_x * cos_rho - sin_x * sin_rho;
  return std::clamp(1.0 + concurrence(state) * modulation, 0.0, 2.0);
}

double coincidence_probability_swapped(const TwoPhotonInState& state, PhotonEnergy energy,
                                       SeparationAlongBeam sep)
{
  return coincidence_probability(state, energy, sep.reversed());
}

double coincidence_probability(const TwoPhotonInState& state, PhotonEnergy energy,
                               SeparationAlongBeam sep, DetectorPolarizations detectors)
{
  if (detectors.at_x == detectors.at_x_prime) {
    return 0.0;
  }
  return detectors.at_x == Polarization::InPlane
             ? coincidence_probability(state, energy, sep)
             : coincidence_probability_swapped(state, energy, sep);
}

char port_name(Port port) noexcept
{
  return static_cast<char>('a' + static_cast<int>(port));
}

TwoPhotonModeState::TwoPhotonModeState(std::initializer_list<Entry> entries)
{
  for (const auto& [ports, amp] : entries) {
    amps_[index(ports.first, ports.second)] += amp;
  }
  check_normalized();
}

TwoPhotonModeState::TwoPhotonModeState(const std::array<Amplitude, 16>& amplitudes)
    : amps_(amplitudes)
{
  check_normalized();
}

void TwoPhotonModeState::check_normalized() const
{
  const double n = norm();
  if (!std::isfinite(n) || std::abs(n * n - 1.0) > 1e-12) {
    throw std::invalid_argument("two-photon mode state is not normalized");
  }
}

TwoPhotonModeState TwoPhotonModeState::symmetric_input()
{
  const double h = std::numbers::sqrt2 / 2.0;
  return {{{Port::A, Port::B}, h}, {{Port::B, Port::A}, h}};
}

TwoPhotonModeState TwoPhotonModeState::antisymmetric_input()
{
  const double h = std::numbers::sqrt2 / 2.0;
  return {{{Port::A, Port::B}, h}, {{Port::B, Port::A}, -h}};
}

TwoPhotonModeState TwoPhotonModeState::product(Port first, Port second)
{
  return {{{first, second}, 1.0}};
}

double TwoPhotonModeState::norm() const noexcept
{
  double sum = 0.0;
  for (const Amplitude& a : amps_) {
    sum += std::norm(a);
  }
  return std::sqrt(sum);
}

bool TwoPhotonModeState::supported_on(Port p, Port q) const noexcept
{
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto pi = static_cast<Port>(i);
      const auto pj = static_cast<Port>(j);
      const bool inside = (pi == p || pi == q) && (pj == p || pj == q);
      if (!inside && std::abs(amplitude(pi, pj)) > 1e-12) {
        return false;
      }
    }
  }
  return true;
}

double overlap_magnitude(const TwoPhotonModeState& x, const TwoPhotonModeState& y) noexcept
{
  std::complex<double> sum;
  for (std::size_t k = 0; k < 16; ++k) {
    sum += std::conj(x.amplitudes()[k]) * y.amplitudes()[k];
  }
  return std::abs(sum);
}

namespace {

using Matrix4 = std::array<std::array<std::complex<double>, 4>, 4>;

// Single-photon mode map, column = input port, row = output port.
Matrix4 splitter_matrix()
{
  const double h = std::numbers::sqrt2 / 2.0;
  Matrix4 u{};
  u[2][0] = {h, 0.0};  // a -> c
  u[3][0] = {0.0, h};  // a -> i d
  u[2][1] = {0.0, h};  // b -> i c
  u[3][1] = {h, 0.0};  // b -> d
  return u;
}

Matrix4 adjoint(const Matrix4& u)
{
  Matrix4 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      out[i][j] = std::conj(u[j][i]);
    }
  }
  return out;
}

TwoPhotonModeState apply_to_both(const Matrix4& u, const TwoPhotonModeState& in)
{
  std::array<std::complex<double>, 16> out{};
  for (std::size_t i1 = 0; i1 < 4; ++i1) {
    for (std::size_t i2 = 0; i2 < 4; ++i2) {
      const auto amp = in.amplitudes()[i1 * 4 + i2];
      if (amp == std::complex<double>{}) {
        continue;
      }
      for (std::size_t o1 = 0; o1 < 4; ++o1) {
        for (std::size_t o2 = 0; o2 < 4; ++o2) {
          out[o1 * 4 + o2] += u[o1][i1] * u[o2][i2] * amp;
        }
      }
    }
  }
  return TwoPhotonModeState(out);
}

}  // namespace

TwoPhotonModeState beam_splitter_transform(const TwoPhotonModeState& in_state)
{
  if (!in_state.supported_on(Port::A, Port::B)) {
    throw std::invalid_argument("beam splitter input must occupy only ports a and b");
  }
  return apply_to_both(splitter_matrix(), in_state);
}

TwoPhotonModeState inverse_beam_splitter_transform(const TwoPhotonModeState& out_state)
{
  if (!out_state.supported_on(Port::C, Port::D)) {
    throw std::invalid_argument("inverse beam splitter input must occupy only ports c and d");
  }
  return apply_to_both(adjoint(splitter_matrix()), out_state);
}

HomStatistics hom_statistics(const TwoPhotonModeState& out_state)
{
  if (!out_state.supported_on(Port::C, Port::D)) {
    throw std::invalid_argument("HOM statistics need a state on output ports c and d");
  }
  HomStatistics stats;
  stats.p_coincidence = std::norm(out_state.amplitude(Port::C, Port::D)) +
                        std::norm(out_state.amplitude(Port::D, Port::C));
  stats.p_both_c = std::norm(out_state.amplitude(Port::C, Port::C));
  stats.p_both_d = std::norm(out_state.amplitude(Port::D, Port::D));
  return stats;
}

}  // namespace ppscat
