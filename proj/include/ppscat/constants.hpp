#pragma once

// Physical constants, photon-energy handling and the low-energy validity
// guard. Energies are carried in eV; lengths in metres.

#include <numbers>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace ppscat {

/// CODATA-2018 values in SI units.
struct PhysicalConstants {
  static constexpr double pi = std::numbers::pi;
  static constexpr double planck = 6.62607015e-34;          // J s (exact)
  static constexpr double hbar = planck / (2.0 * pi);       // J s
  static constexpr double c = 299792458.0;                  // m/s (exact)
  static constexpr double elementary_charge = 1.602176634e-19;  // C (exact)
  static constexpr double alpha = 7.2973525693e-3;
  static constexpr double electron_mass = 9.1093837015e-31;  // kg

  /// m c^2 in eV, derived from the stored mass so that hbar c / lambda_e
  /// reproduces it to rounding.
  static constexpr double electron_mass_energy =
      electron_mass * c * c / elementary_charge;
  /// hbar / (m c), in metres.
  static constexpr double compton_wavelength_reduced = hbar / (electron_mass * c);
  /// hbar c in eV m.
  static constexpr double hbar_c = hbar * c / elementary_charge;
};

/// Energy of each photon in the centre-of-momentum frame.
class PhotonEnergy {
public:
  /// Throws std::invalid_argument unless ev is finite and positive.
  explicit PhotonEnergy(double ev);

  [[nodiscard]] double electron_volts() const noexcept { return ev_; }
  [[nodiscard]] double joules() const noexcept
  {
    return ev_ * PhysicalConstants::elementary_charge;
  }
  /// E / (m c^2).
  [[nodiscard]] double rest_energy_ratio() const noexcept
  {
    return ev_ / PhysicalConstants::electron_mass_energy;
  }
  /// hbar c / E in metres.
  [[nodiscard]] double reduced_wavelength() const noexcept
  {
    return PhysicalConstants::hbar_c / ev_;
  }

  friend bool operator==(PhotonEnergy, PhotonEnergy) = default;

private:
  double ev_;
};

/// E = 2 pi hbar c / lambda (conventional optics wavelength).
PhotonEnergy energy_from_wavelength(double lambda_m);

/// E = hbar c / lambda_bar.
PhotonEnergy energy_from_reduced_wavelength(double lambda_bar_m);

enum class ValidityStatus { Valid, Marginal, Invalid };

std::string_view to_string(ValidityStatus status);

/// Valid below 0.1 m c^2, Marginal up to m c^2, Invalid at and above
/// the pair-creation scale.
ValidityStatus validate_low_energy(PhotonEnergy energy);

/// Whether evaluations at Invalid energies are refused or computed anyway.
enum class EnergyCheck { Enforce, Force };

class ValidityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Throws ValidityError for Invalid energies unless check == Force.
void require_low_energy(PhotonEnergy energy, EnergyCheck check);

namespace angles {

/// sin and cos of x. Arguments within 1e-14 (relative) of an integer
/// multiple of pi/4 return the exact table values, so that symmetric
/// states and right-angle scattering cancel exactly.
std::pair<double, double> sincos(double x) noexcept;

inline double sin(double x) noexcept { return sincos(x).first; }
inline double cos(double x) noexcept { return sincos(x).second; }

constexpr double deg_to_rad(double deg) noexcept
{
  return deg * (std::numbers::pi / 180.0);
}
constexpr double rad_to_deg(double rad) noexcept
{
  return rad * (180.0 / std::numbers::pi);
}

/// Validates a scattering angle. Values within 1e-12 outside [0, pi] are
/// clamped; anything further out throws std::invalid_argument.
double checked_scattering_angle(double theta);

}  // namespace angles

}  // namespace ppscat
