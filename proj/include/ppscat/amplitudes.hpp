#pragma once

// Scattering-matrix components M_{x1 x2 x3 x4}(E, theta) for a pluggable
// mechanism, completed from the single base amplitude M_1212 by the
// rotation, angular-momentum and exchange symmetries.

#include "ppscat/constants.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppscat {

/// Linear polarization relative to the scattering plane.
enum class Polarization : int { Perp = 1, InPlane = 2 };

/// Dimensionless complex amplitude.
using ComplexAmplitude = std::complex<double>;

using BaseAmplitudeFn = std::function<ComplexAmplitude(PhotonEnergy, double theta)>;

/// A named provider of M_1212(E, theta). Immutable once built.
class Mechanism {
public:
  Mechanism(std::string name, BaseAmplitudeFn base);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  /// M_1212(E, theta). Throws std::invalid_argument for theta outside
  /// [0, pi] and std::domain_error if the provider returns a non-finite value.
  [[nodiscard]] ComplexAmplitude base_amplitude(PhotonEnergy energy, double theta) const;

private:
  std::string name_;
  BaseAmplitudeFn base_;
};

/// The four nonzero components for an in-state with opposite polarizations.
/// Entries with x3 == x4 vanish by angular-momentum conservation.
class AmplitudeTable {
public:
  AmplitudeTable(ComplexAmplitude m1212, ComplexAmplitude m1221) noexcept
      : m1212_(m1212), m1221_(m1221)
  {
  }

  [[nodiscard]] ComplexAmplitude m_1212() const noexcept { return m1212_; }
  [[nodiscard]] ComplexAmplitude m_1221() const noexcept { return m1221_; }
  // M_{x1 x2 x3 x4} = M_{x2 x1 x4 x3}
  [[nodiscard]] ComplexAmplitude m_2121() const noexcept { return m1212_; }
  [[nodiscard]] ComplexAmplitude m_2112() const noexcept { return m1221_; }

  /// Any component with {x1, x2} = {1, 2}; zero when x3 == x4.
  /// Throws std::invalid_argument when x1 == x2 (not part of this table).
  [[nodiscard]] ComplexAmplitude at(Polarization x1, Polarization x2, Polarization x3,
                                    Polarization x4) const;

private:
  ComplexAmplitude m1212_;
  ComplexAmplitude m1221_;
};

/// K(E) = 4 alpha^2 E^4 / (45 m^4 c^8), the QED low-energy scale.
double qed_amplitude_scale(PhotonEnergy energy) noexcept;

/// Low-energy QED: M_1212 = -i K(E) (31 + 22 cos(theta) + 3 cos^2(theta)).
ComplexAmplitude qed_base_amplitude(PhotonEnergy energy, double theta);

/// m_1212 = M(E, theta), m_1221 = M(E, pi - theta).
AmplitudeTable amplitude_table(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                               EnergyCheck check = EnergyCheck::Enforce);

class DegeneratePhaseError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// arg(M_theta conj(M_{pi - theta})) in [0, 2 pi). Throws
/// DegeneratePhaseError if either amplitude is zero.
double delta_beta(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                  EnergyCheck check = EnergyCheck::Enforce);

/// Relative phase of an already evaluated pair; same conventions as above.
double relative_phase(ComplexAmplitude m_theta, ComplexAmplitude m_mirror);

namespace mechanisms {

inline constexpr const char* qed_low_energy_name = "qed-low-energy";

Mechanism qed_low_energy();

/// M(theta) = 0.
Mechanism null_mechanism();

/// M(theta) = exp(i kappa theta); delta_beta = kappa (2 theta - pi).
Mechanism phase_ramp(double kappa, std::string name = "synthetic-phase-ramp");

/// Unit magnitude, phase 0 for theta <= pi/2 and phase `step` beyond, so
/// that |delta_beta| = step away from the right angle.
Mechanism phase_step(double step, std::string name = "synthetic-phase-step");

/// Arbitrary amplitude of theta alone, energy independent.
Mechanism from_function(std::string name, std::function<ComplexAmplitude(double)> fn);

}  // namespace mechanisms

/// Name to mechanism lookup. The default registry carries the QED
/// mechanism and two synthetic phase-step mechanisms that reach the
/// entanglement-independent and antisymmetric-favoring regimes.
class MechanismRegistry {
public:
  MechanismRegistry() = default;

  static const MechanismRegistry& builtin();

  void add(Mechanism mechanism);
  [[nodiscard]] bool contains(const std::string& name) const;
  /// Throws std::invalid_argument for unknown names.
  [[nodiscard]] const Mechanism& get(const std::string& name) const;
  [[nodiscard]] std::vector<std::string> names() const;

private:
  std::map<std::string, std::shared_ptr<const Mechanism>> entries_;
};

}  // namespace ppscat
