#pragma once

// Differential and total cross sections for the two-photon in-state
//
//   |psi> = cos(phi) |p1,1; p2,2> + e^{i rho} sin(phi) |p1,2; p2,1>
//
// evaluated three ways: the direct sum over out-polarizations, the reduced
// form in terms of M_theta and M_{pi - theta}, and the closed QED low-energy
// expression. All three must agree.

#include "ppscat/amplitudes.hpp"
#include "ppscat/constants.hpp"

#include <string_view>

namespace ppscat {

class TwoPhotonInState {
public:
  /// phi must lie in [0, pi/2] (std::invalid_argument otherwise); rho is
  /// wrapped into [-pi/2, 3 pi/2).
  TwoPhotonInState(double phi, double rho);

  static TwoPhotonInState bell_plus();
  static TwoPhotonInState bell_minus();
  /// |p1,1; p2,2>
  static TwoPhotonInState product_12();
  /// |p1,2; p2,1>
  static TwoPhotonInState product_21();

  [[nodiscard]] double phi() const noexcept { return phi_; }
  [[nodiscard]] double rho() const noexcept { return rho_; }

private:
  double phi_;
  double rho_;
};

/// s = sin(2 phi) cos(rho), the weight of the interference term.
double entanglement_weight(const TwoPhotonInState& state) noexcept;

/// sin(2 phi).
double concurrence(const TwoPhotonInState& state) noexcept;

/// Differential cross section in m^2/sr.
struct DcsValue {
  double value = 0.0;
};

/// alpha^4 E^6 hbar^2 / (45^2 pi^2 m^8 c^14) in m^2/sr.
double natural_dcs_unit(PhotonEnergy energy) noexcept;

inline double in_natural_units(DcsValue dcs, PhotonEnergy energy) noexcept
{
  return dcs.value / natural_dcs_unit(energy);
}

/// (hbar c / E)^2 / (64 (2 pi)^2), in m^2/sr.
double dcs_prefactor(PhotonEnergy energy) noexcept;

DcsValue dcs_general(const TwoPhotonInState& state, const Mechanism& mechanism,
                     PhotonEnergy energy, double theta,
                     EnergyCheck check = EnergyCheck::Enforce);

DcsValue dcs_reduced(const TwoPhotonInState& state, const Mechanism& mechanism,
                     PhotonEnergy energy, double theta,
                     EnergyCheck check = EnergyCheck::Enforce);

DcsValue dcs_right_angle(const TwoPhotonInState& state, const Mechanism& mechanism,
                         PhotonEnergy energy, EnergyCheck check = EnergyCheck::Enforce);

DcsValue dcs_qed_closed(const TwoPhotonInState& state, PhotonEnergy energy, double theta,
                        EnergyCheck check = EnergyCheck::Enforce);

/// The closed-form QED bracket divided by 8, i.e. the DCS in natural units.
double qed_closed_natural(const TwoPhotonInState& state, double theta);

enum class Regime {
  FavorsSymmetric,          // cos(delta_beta) > 0
  EntanglementIndependent,  // cos(delta_beta) = 0 or an amplitude vanishes
  FavorsAntisymmetric,      // cos(delta_beta) < 0
};

std::string_view to_string(Regime regime);

inline constexpr double regime_tolerance = 1e-12;

Regime classify_regime(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                       EnergyCheck check = EnergyCheck::Enforce);

/// Total cross section in m^2: half the solid-angle integral of dcs_reduced
/// (identical final photons), with adaptive Gauss-Kronrod quadrature in theta
/// at relative tolerance 1e-10.
double total_xsec(const TwoPhotonInState& state, const Mechanism& mechanism,
                  PhotonEnergy energy, EnergyCheck check = EnergyCheck::Enforce);

}  // namespace ppscat
