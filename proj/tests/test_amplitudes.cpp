#include "doctest.h"
#include "oracles.hpp"

#include "ppscat/amplitudes.hpp"

#include <cmath>
#include <numbers>

using namespace ppscat;
using oracle::rel_diff;
using std::numbers::pi;

namespace {

const PhotonEnergy e1{1.0};

// i M for a QED amplitude, which is real by construction.
double i_times(ComplexAmplitude m)
{
  const ComplexAmplitude im = ComplexAmplitude{0.0, 1.0} * m;
  CHECK(im.imag() == 0.0);
  return im.real();
}

}  // namespace

TEST_CASE("QED base amplitude at the special angles")
{
  const double k = qed_amplitude_scale(e1);
  CHECK(rel_diff(i_times(qed_base_amplitude(e1, pi / 2.0)), 31.0 * k) < 1e-15);
  CHECK(rel_diff(i_times(qed_base_amplitude(e1, 0.0)), 56.0 * k) < 1e-15);
  CHECK(rel_diff(i_times(qed_base_amplitude(e1, pi)), 12.0 * k) < 1e-15);
  CHECK_THROWS_AS(qed_base_amplitude(e1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(qed_base_amplitude(e1, 3.5), std::invalid_argument);
}

TEST_CASE("QED amplitude scale matches 4 alpha^2 E^4 / (45 m^4 c^8)")
{
  const double x = 1.0 / PhysicalConstants::electron_mass_energy;
  CHECK(rel_diff(qed_amplitude_scale(e1),
                 4.0 * oracle::alpha * oracle::alpha * std::pow(x, 4) / 45.0) < 1e-9);
}

TEST_CASE("QED amplitude is purely imaginary with positive i M")
{
  for (int deg = 0; deg <= 180; ++deg) {
    const ComplexAmplitude m = qed_base_amplitude(e1, angles::deg_to_rad(deg));
    CHECK(m.real() == 0.0);
    CHECK(m.imag() < 0.0);
    // bracket never drops below 12
    CHECK(-m.imag() >= 12.0 * qed_amplitude_scale(e1) * (1.0 - 1e-15));
  }
}

TEST_CASE("QED amplitude scales as E^4")
{
  for (const double ev : {1e-3, 0.5, 2.48, 1000.0}) {
    for (const double theta : {0.0, 0.4, 1.3, pi / 2.0, 2.9, pi}) {
      const double a = std::abs(qed_base_amplitude(PhotonEnergy(ev), theta));
      const double b = std::abs(qed_base_amplitude(PhotonEnergy(2.0 * ev), theta));
      CHECK(rel_diff(b, 16.0 * a) <= 1e-12);
    }
  }
}

TEST_CASE("amplitude table completion")
{
  const Mechanism qed = mechanisms::qed_low_energy();
  const double k = qed_amplitude_scale(e1);

  SUBCASE("right angle: both orderings coincide")
  {
    const AmplitudeTable t = amplitude_table(qed, e1, pi / 2.0);
    CHECK(t.m_1212() == t.m_1221());
    CHECK(rel_diff(i_times(t.m_1212()), 31.0 * k) < 1e-15);
  }
  SUBCASE("forward angle")
  {
    const AmplitudeTable t = amplitude_table(qed, e1, 0.0);
    CHECK(rel_diff(i_times(t.m_1212()), 56.0 * k) < 1e-15);
    CHECK(rel_diff(i_times(t.m_1221()), 12.0 * k) < 1e-15);
  }
  SUBCASE("synthetic exp(i theta) at pi/3")
  {
    const Mechanism ramp = mechanisms::phase_ramp(1.0);
    const AmplitudeTable t = amplitude_table(ramp, e1, pi / 3.0);
    CHECK(std::abs(t.m_1221() - std::polar(1.0, 2.0 * pi / 3.0)) < 1e-15);
  }
  SUBCASE("swap rule and vanishing entries")
  {
    const AmplitudeTable t = amplitude_table(qed, e1, 0.7);
    CHECK(t.m_2121() == t.m_1212());
    CHECK(t.m_2112() == t.m_1221());
    using P = Polarization;
    CHECK(t.at(P::Perp, P::InPlane, P::Perp, P::InPlane) == t.m_1212());
    CHECK(t.at(P::Perp, P::InPlane, P::InPlane, P::Perp) == t.m_1221());
    CHECK(t.at(P::InPlane, P::Perp, P::InPlane, P::Perp) == t.m_2121());
    CHECK(t.at(P::InPlane, P::Perp, P::Perp, P::InPlane) == t.m_2112());
    CHECK(t.at(P::Perp, P::InPlane, P::Perp, P::Perp) == ComplexAmplitude{});
    CHECK(t.at(P::InPlane, P::Perp, P::InPlane, P::InPlane) == ComplexAmplitude{});
    CHECK_THROWS_AS((void)t.at(P::Perp, P::Perp, P::Perp, P::InPlane), std::invalid_argument);
  }
}

TEST_CASE("mirror entry equals the base amplitude at pi - theta")
{
  const Mechanism ramp = mechanisms::phase_ramp(0.37);
  const Mechanism qed = mechanisms::qed_low_energy();
  for (int deg = 0; deg <= 180; deg += 3) {
    const double theta = angles::deg_to_rad(deg);
    for (const Mechanism* m : {&ramp, &qed}) {
      CHECK(amplitude_table(*m, e1, theta).m_1221() ==
            amplitude_table(*m, e1, pi - theta).m_1212());
    }
  }
}

TEST_CASE("relative phase")
{
  const Mechanism qed = mechanisms::qed_low_energy();
  for (int deg = 0; deg <= 180; deg += 5) {
    CHECK(delta_beta(qed, e1, angles::deg_to_rad(deg)) == 0.0);
  }

  // M_theta = i, M_{pi - theta} = 1 when evaluated at theta < pi/2
  const Mechanism quarter = mechanisms::from_function(
      "quarter", [](double t) { return t < pi / 2.0 ? ComplexAmplitude{0.0, 1.0} : 1.0; });
  CHECK(delta_beta(quarter, e1, pi / 3.0) == doctest::Approx(pi / 2.0));

  const Mechanism flip = mechanisms::from_function(
      "flip", [](double t) { return t < pi / 2.0 ? ComplexAmplitude{-1.0, 0.0} : 1.0; });
  CHECK(delta_beta(flip, e1, pi / 3.0) == doctest::Approx(pi));

  // normalized into [0, 2 pi)
  CHECK(relative_phase({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(3.0 * pi / 2.0));

  CHECK_THROWS_AS(delta_beta(mechanisms::null_mechanism(), e1, 0.5), DegeneratePhaseError);
}

TEST_CASE("mechanism guards")
{
  const Mechanism bad = mechanisms::from_function("bad", [](double) {
    return ComplexAmplitude{std::nan(""), 0.0};
  });
  CHECK_THROWS_AS((void)bad.base_amplitude(e1, 0.3), std::domain_error);
  CHECK_THROWS_AS(Mechanism("", qed_base_amplitude), std::invalid_argument);
  CHECK_THROWS_AS(Mechanism("empty", BaseAmplitudeFn{}), std::invalid_argument);

  const Mechanism qed = mechanisms::qed_low_energy();
  const PhotonEnergy above{2.0 * PhysicalConstants::electron_mass_energy};
  CHECK_THROWS_AS(amplitude_table(qed, above, 0.3), ValidityError);
  CHECK_NOTHROW(amplitude_table(qed, above, 0.3, EnergyCheck::Force));
}

TEST_CASE("builtin registry")
{
  const auto& reg = MechanismRegistry::builtin();
  CHECK(reg.contains("qed-low-energy"));
  CHECK(reg.contains("synthetic-phase-90"));
  CHECK(reg.contains("synthetic-phase-180"));
  CHECK(reg.get("qed-low-energy").name() == "qed-low-energy");
  CHECK_THROWS_AS((void)reg.get("w-boson"), std::invalid_argument);

  MechanismRegistry local;
  local.add(mechanisms::phase_ramp(2.0, "ramp2"));
  CHECK(local.names() == std::vector<std::string>{"ramp2"});
}
