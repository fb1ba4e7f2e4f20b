#include "ppscat/scattering.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace ppscat {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_rho(double rho)
{
  if (rho >= -pi / 2.0 && rho < 3.0 * pi / 2.0) {
    return rho;
  }
  double r = std::fmod(rho + pi / 2.0, 2.0 * pi);
  if (r < 0.0) {
    r += 2.0 * pi;
  }
  r -= pi / 2.0;
  if (r >= 3.0 * pi / 2.0) {
    r -= 2.0 * pi;
  }
  return r;
}

// |M_theta|^2 + |M_mirror|^2 + 2 w |M_theta| |M_mirror| written as
// (1+w)/2 (a+b)^2 + (1-w)/2 (a-b)^2, which is free of cancellation when
// the interference is destructive and non-negative for |w| <= 1.
double interference_sum(double a, double b, double w) noexcept
{
  const double sum = a + b;
  const double diff = a - b;
  return 0.5 * (1.0 + w) * sum * sum + 0.5 * (1.0 - w) * diff * diff;
}

}  // namespace

TwoPhotonInState::TwoPhotonInState(double phi, double rho) : phi_(phi), rho_(0.0)
{
  if (!std::isfinite(phi) || phi < 0.0 || phi > pi / 2.0) {
    throw std::invalid_argument("phi must lie in [0, pi/2], got " + std::to_string(phi));
  }
  if (!std::isfinite(rho)) {
    throw std::invalid_argument("rho must be finite");
  }
  rho_ = wrap_rho(rho);
}

TwoPhotonInState TwoPhotonInState::bell_plus()
{
  return {pi / 4.0, 0.0};
}

TwoPhotonInState TwoPhotonInState::bell_minus()
{
  return {pi / 4.0, pi};
}

TwoPhotonInState TwoPhotonInState::product_12()
{
  return {0.0, 0.0};
}

TwoPhotonInState TwoPhotonInState::product_21()
{
  return {pi / 2.0, 0.0};
}

double entanglement_weight(const TwoPhotonInState& state) noexcept
{
  return angles::sin(2.0 * state.phi()) * angles::cos(state.rho());
}

double concurrence(const TwoPhotonInState& state) noexcept
{
  return angles::sin(2.0 * state.phi());
}

double natural_dcs_unit(PhotonEnergy energy) noexcept
{
  constexpr double a2 = PhysicalConstants::alpha * PhysicalConstants::alpha;
  const double x2 = energy.rest_energy_ratio() * energy.rest_energy_ratio();
  const double x8 = (x2 * x2) * (x2 * x2);
  const double lambda = energy.reduced_wavelength();
  return a2 * a2 / (45.0 * 45.0 * pi * pi) * lambda * lambda * x8;
}

double dcs_prefactor(PhotonEnergy energy) noexcept
{
  const double lambda = energy.reduced_wavelength();
  return lambda * lambda / (64.0 * (2.0 * pi) * (2.0 * pi));
}

DcsValue dcs_general(const TwoPhotonInState& state, const Mechanism& mechanism,
                     PhotonEnergy energy, double theta, EnergyCheck check)
{
  const AmplitudeTable table = amplitude_table(mechanism, energy, theta, check);
  const auto [sin_phi, cos_phi] = angles::sincos(state.phi());
  const auto [sin_rho, cos_rho] = angles::sincos(state.rho());
  const ComplexAmplitude second_weight{cos_rho * sin_phi, sin_rho * sin_phi};

  constexpr std::array pols{Polarization::Perp, Polarization::InPlane};
  double sum = 0.0;
  for (const Polarization x3 : pols) {
    for (const Polarization x4 : pols) {
      const ComplexAmplitude term =
          cos_phi * table.at(Polarization::Perp, Polarization::InPlane, x3, x4) +
          second_weight * table.at(Polarization::InPlane, Polarization::Perp, x3, x4);
      sum += std::norm(term);
    }
  }
  return {dcs_prefactor(energy) * sum};
}

DcsValue dcs_reduced(const TwoPhotonInState& state, const Mechanism& mechanism,
                     PhotonEnergy energy, double theta, EnergyCheck check)
{
  const AmplitudeTable table = amplitude_table(mechanism, energy, theta, check);
  const double a = std::abs(table.m_1212());
  const double b = std::abs(table.m_1221());
  double w = 0.0;
  if (a > 0.0 && b > 0.0) {
    w = entanglement_weight(state) *
        angles::cos(relative_phase(table.m_1212(), table.m_1221()));
  }
  return {dcs_prefactor(energy) * interference_sum(a, b, w)};
}

DcsValue dcs_right_angle(const TwoPhotonInState& state, const Mechanism& mechanism,
                         PhotonEnergy energy, EnergyCheck check)
{
  require_low_energy(energy, check);
  const double m = std::abs(mechanism.base_amplitude(energy, pi / 2.0));
  const double lambda = energy.reduced_wavelength();
  const double prefactor = lambda * lambda / (32.0 * (2.0 * pi) * (2.0 * pi));
  return {prefactor * m * m * (1.0 + entanglement_weight(state))};
}

double qed_closed_natural(const TwoPhotonInState& state, double theta)
{
  const double ct = angles::cos(angles::checked_scattering_angle(theta));
  const double s = entanglement_weight(state);
  const double even = 31.0 + 3.0 * ct * ct;
  const double odd2 = 22.0 * 22.0 * ct * ct;
  return ((1.0 + s) * even * even + (1.0 - s) * odd2) / 8.0;
}

DcsValue dcs_qed_closed(const TwoPhotonInState& state, PhotonEnergy energy, double theta,
                        EnergyCheck check)
{
  require_low_energy(energy, check);
  const double ct = angles::cos(angles::checked_scattering_angle(theta));
  const double s = entanglement_weight(state);
  const double even = 31.0 + 3.0 * ct * ct;
  const double bracket = (1.0 + s) * even * even + (1.0 - s) * 22.0 * 22.0 * ct * ct;

  constexpr double a2 = PhysicalConstants::alpha * PhysicalConstants::alpha;
  const double le2 = PhysicalConstants::compton_wavelength_reduced *
                     PhysicalConstants::compton_wavelength_reduced;
  const double l2 = energy.reduced_wavelength() * energy.reduced_wavelength();
  const double length_factor = (le2 * le2) * (le2 * le2) / (l2 * l2 * l2);
  return {a2 * a2 / (2.0 * 45.0 * 45.0 * (2.0 * pi) * (2.0 * pi)) * length_factor * bracket};
}

std::string_view to_string(Regime regime)
{
  switch (regime) {
  case Regime::FavorsSymmetric:
    return "FavorsSymmetric";
  case Regime::EntanglementIndependent:
    return "EntanglementIndependent";
  case Regime::FavorsAntisymmetric:
    return "FavorsAntisymmetric";
  }
  return "Unknown";
}

Regime classify_regime(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                       EnergyCheck check)
{
  const AmplitudeTable table = amplitude_table(mechanism, energy, theta, check);
  if (table.m_1212() == ComplexAmplitude{} || table.m_1221() == ComplexAmplitude{}) {
    return Regime::EntanglementIndependent;
  }
  const double c = angles::cos(relative_phase(table.m_1212(), table.m_1221()));
  if (c > regime_tolerance) {
    return Regime::FavorsSymmetric;
  }
  if (c < -regime_tolerance) {
    return Regime::FavorsAntisymmetric;
  }
  return Regime::EntanglementIndependent;
}

double total_xsec(const TwoPhotonInState& state, const Mechanism& mechanism,
                  PhotonEnergy energy, EnergyCheck check)
{
  require_low_energy(energy, check);
  // Integrate in natural units so the integrand is of order one.
  const double unit = natural_dcs_unit(energy);
  auto integrand = [&](double theta) {
    return dcs_reduced(state, mechanism, energy, theta, EnergyCheck::Force).value / unit *
           std::sin(theta);
  };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double polar = Quadrature::integrate(integrand, 0.0, pi, 15, 1e-10);
  return 0.5 * 2.0 * pi * polar * unit;
}

}  // namespace ppscat
