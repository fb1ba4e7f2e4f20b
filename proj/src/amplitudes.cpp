#include "ppscat/amplitudes.hpp"

#include <cmath>
#include <numbers>

namespace ppscat {

Mechanism::Mechanism(std::string name, BaseAmplitudeFn base)
    : name_(std::move(name)), base_(std::move(base))
{
  if (name_.empty()) {
    throw std::invalid_argument("mechanism name must not be empty");
  }
  if (!base_) {
    throw std::invalid_argument("mechanism '" + name_ + "' has no amplitude function");
  }
}

ComplexAmplitude Mechanism::base_amplitude(PhotonEnergy energy, double theta) const
{
  const double angle = angles::checked_scattering_angle(theta);
  const ComplexAmplitude m = base_(energy, angle);
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
    throw std::domain_error("mechanism '" + name_ + "' returned a non-finite amplitude");
  }
  return m;
}

ComplexAmplitude AmplitudeTable::at(Polarization x1, Polarization x2, Polarization x3,
                                    Polarization x4) const
{
  if (x1 == x2) {
    throw std::invalid_argument("amplitude table covers only opposite in-polarizations");
  }
  if (x3 == x4) {
    return {0.0, 0.0};
  }
  // Swapping both pairs leaves the component unchanged, so only whether
  // x3 follows x1 matters.
  return x3 == x1 ? m1212_ : m1221_;
}

double qed_amplitude_scale(PhotonEnergy energy) noexcept
{
  const double x2 = energy.rest_energy_ratio() * energy.rest_energy_ratio();
  constexpr double a = PhysicalConstants::alpha;
  return 4.0 * a * a * (x2 * x2) / 45.0;
}

ComplexAmplitude qed_base_amplitude(PhotonEnergy energy, double theta)
{
  const double angle = angles::checked_scattering_angle(theta);
  const double ct = angles::cos(angle);
  const double bracket = 31.0 + 22.0 * ct + 3.0 * ct * ct;
  // i M = K * bracket > 0
  return {0.0, -qed_amplitude_scale(energy) * bracket};
}

AmplitudeTable amplitude_table(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                               EnergyCheck check)
{
  require_low_energy(energy, check);
  const double angle = angles::checked_scattering_angle(theta);
  return {mechanism.base_amplitude(energy, angle),
          mechanism.base_amplitude(energy, std::numbers::pi - angle)};
}

double relative_phase(ComplexAmplitude m_theta, ComplexAmplitude m_mirror)
{
  if (m_theta == ComplexAmplitude{} || m_mirror == ComplexAmplitude{}) {
    throw DegeneratePhaseError("relative phase undefined: an amplitude vanishes");
  }
  double phase = std::arg(m_theta * std::conj(m_mirror));
  if (phase < 0.0) {
    phase += 2.0 * std::numbers::pi;
  }
  if (phase >= 2.0 * std::numbers::pi) {
    phase = 0.0;
  }
  return phase + 0.0;  // normalizes -0
}

double delta_beta(const Mechanism& mechanism, PhotonEnergy energy, double theta,
                  EnergyCheck check)
{
  const AmplitudeTable table = amplitude_table(mechanism, energy, theta, check);
  return relative_phase(table.m_1212(), table.m_1221());
}

namespace mechanisms {

Mechanism qed_low_energy()
{
  return Mechanism(qed_low_energy_name, qed_base_amplitude);
}

Mechanism null_mechanism()
{
  return from_function("null", [](double) { return ComplexAmplitude{}; });
}

Mechanism phase_ramp(double kappa, std::string name)
{
  return from_function(std::move(name),
                       [kappa](double theta) { return std::polar(1.0, kappa * theta); });
}

Mechanism phase_step(double step, std::string name)
{
  return from_function(std::move(name), [step](double theta) {
    return theta <= std::numbers::pi / 2.0 ? ComplexAmplitude{1.0, 0.0}
                                           : std::polar(1.0, step);
  });
}

Mechanism from_function(std::string name, std::function<ComplexAmplitude(double)> fn)
{
  return Mechanism(std::move(name),
                   [fn = std::move(fn)](PhotonEnergy, double theta) { return fn(theta); });
}

}  // namespace mechanisms

const MechanismRegistry& MechanismRegistry::builtin()
{
  static const MechanismRegistry registry = [] {
    MechanismRegistry r;
    r.add(mechanisms::qed_low_energy());
    r.add(mechanisms::phase_step(std::numbers::pi / 2.0, "synthetic-phase-90"));
    r.add(mechanisms::phase_step(std::numbers::pi, "synthetic-phase-180"));
    return r;
  }();
  return registry;
}

void MechanismRegistry::add(Mechanism mechanism)
{
  const std::string key = mechanism.name();
  entries_[key] = std::make_shared<const Mechanism>(std::move(mechanism));
}

bool MechanismRegistry::contains(const std::string& name) const
{
  return entries_.contains(name);
}

const Mechanism& MechanismRegistry::get(const std::string& name) const
{
  const auto it = entries_.find(name);
  if (it == entries_.end()) {
    std::string known;
    for (const auto& [key, value] : entries_) {
      known += known.empty() ? key : ", " + key;
    }
    throw std::invalid_argument("unknown mechanism '" + name + "' (known: " + known + ")");
  }
  return *it->second;
}

std::vector<std::string> MechanismRegistry::names() const
{
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [key, value] : entries_) {
    out.push_back(key);
  }
  return out;
}

}  // namespace ppscat
