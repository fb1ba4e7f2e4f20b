#include "ppscat/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ppscat {

PhotonEnergy::PhotonEnergy(double ev) : ev_(ev)
{
  if (!std::isfinite(ev) || ev <= 0.0) {
    throw std::invalid_argument("photon energy must be finite and positive, got " +
                                std::to_string(ev) + " eV");
  }
}

PhotonEnergy energy_from_wavelength(double lambda_m)
{
  if (!std::isfinite(lambda_m) || lambda_m <= 0.0) {
    throw std::invalid_argument("wavelength must be finite and positive");
  }
  return PhotonEnergy(2.0 * PhysicalConstants::pi * PhysicalConstants::hbar_c / lambda_m);
}

PhotonEnergy energy_from_reduced_wavelength(double lambda_bar_m)
{
  if (!std::isfinite(lambda_bar_m) || lambda_bar_m <= 0.0) {
    throw std::invalid_argument("reduced wavelength must be finite and positive");
  }
  return PhotonEnergy(PhysicalConstants::hbar_c / lambda_bar_m);
}

std::string_view to_string(ValidityStatus status)
{
  switch (status) {
  case ValidityStatus::Valid:
    return "Valid";
  case ValidityStatus::Marginal:
    return "Marginal";
  case ValidityStatus::Invalid:
    return "Invalid";
  }
  return "Unknown";
}

ValidityStatus validate_low_energy(PhotonEnergy energy)
{
  const double x = energy.rest_energy_ratio();
  if (x < 0.1) {
    return ValidityStatus::Valid;
  }
  if (x < 1.0) {
    return ValidityStatus::Marginal;
  }
  return ValidityStatus::Invalid;
}

void require_low_energy(PhotonEnergy energy, EnergyCheck check)
{
  if (check == EnergyCheck::Force) {
    return;
  }
  if (validate_low_energy(energy) == ValidityStatus::Invalid) {
    throw ValidityError("photon energy " + std::to_string(energy.electron_volts()) +
                        " eV is at or above the electron rest energy; the low-energy "
                        "amplitudes do not apply (use force to evaluate anyway)");
  }
}

namespace angles {

std::pair<double, double> sincos(double x) noexcept
{
  constexpr double quarter = std::numbers::pi / 4.0;
  const double k = std::nearbyint(x / quarter);
  if (std::abs(x - k * quarter) <= 1e-14 * std::max(1.0, std::abs(x))) {
    constexpr double h = 0.70710678118654752440;
    // (sin, cos) at k * pi/4 for k = 0..7
    static constexpr std::array<std::pair<double, double>, 8> table{{
        {0.0, 1.0}, {h, h}, {1.0, 0.0}, {h, -h},
        {0.0, -1.0}, {-h, -h}, {-1.0, 0.0}, {-h, h},
    }};
    auto idx = static_cast<long long>(std::fmod(k, 8.0));
    if (idx < 0) {
      idx += 8;
    }
    return table[static_cast<std::size_t>(idx)];
  }
  return {std::sin(x), std::cos(x)};
}

double checked_scattering_angle(double theta)
{
  constexpr double slack = 1e-12;
  if (!std::isfinite(theta) || theta < -slack || theta > std::numbers::pi + slack) {
    throw std::invalid_argument("scattering angle must lie in [0, pi], got " +
                                std::to_string(theta));
  }
  return std::clamp(theta, 0.0, std::numbers::pi);
}

}  // namespace angles

}  // namespace ppscat
