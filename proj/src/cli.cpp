#include "ppscat/cli.hpp"

#include "ppscat/amplitudes.hpp"
#include "ppscat/constants.hpp"
#include "ppscat/correlations.hpp"
#include "ppscat/csv.hpp"
#include "ppscat/sampler.hpp"
#include "ppscat/scattering.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

namespace ppscat::cli {

namespace {

using io::Cell;
using io::Table;

struct Options {
  std::string mechanism = mechanisms::qed_low_energy_name;
  std::optional<std::string> state;
  std::optional<double> phi;
  std::optional<double> rho;
  std::optional<double> energy_ev;
  std::optional<double> wavelength;
  std::optional<double> reduced_wavelength;
  bool force = false;
  std::optional<std::string> theta_grid;
  std::optional<double> theta_deg;
  std::string method = "reduced";
  std::string output = "-";
  std::string format = "csv";
  std::uint64_t n_events = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::string> delta_grid;
  std::optional<double> delta;
  std::string detectors = "21";
  std::string input = "symmetric";
};

// Flags that are resolved together; a command-line flag from a group
// shadows every config-file key of that group.
const std::vector<std::set<std::string>> exclusive_groups{
    {"energy-ev", "wavelength", "reduced-wavelength"},
    {"state", "phi", "rho"},
    {"theta-grid", "theta-deg"},
    {"delta-grid", "delta"},
};

bool verbose()
{
  const char* v = std::getenv("PPSCAT_VERBOSE");
  return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

std::string fmt(double v)
{
  return io::format_double(v);
}

void add_output(CLI::App* sub, Options& o)
{
  sub->add_option("-o,--output", o.output, "Output path, '-' for stdout");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_energy(CLI::App* sub, Options& o)
{
  sub->add_option("--energy-ev", o.energy_ev, "Photon energy in the COM frame, eV");
  sub->add_option("--wavelength", o.wavelength, "Conventional wavelength 2 pi hbar c / E, m");
  sub->add_option("--reduced-wavelength", o.reduced_wavelength, "Reduced wavelength hbar c / E, m");
  sub->add_flag("--force", o.force, "Evaluate even at energies outside the low-energy domain");
}

void add_state(CLI::App* sub, Options& o)
{
  sub->add_option("--state", o.state, "Named in-state (overrides --phi/--rho)")
      ->check(CLI::IsMember({"bell-plus", "bell-minus", "product-12", "product-21"}));
  sub->add_option("--phi", o.phi, "Entanglement angle in [0, pi/2], rad");
  sub->add_option("--rho", o.rho, "Relative phase, rad");
}

void add_mechanism(CLI::App* sub, Options& o)
{
  sub->add_option("--mechanism", o.mechanism, "Scattering mechanism")
      ->check(CLI::IsMember(MechanismRegistry::builtin().names()));
}

void add_theta(CLI::App* sub, Options& o)
{
  sub->add_option("--theta-grid", o.theta_grid, "Angle grid start:stop:step in degrees");
  sub->add_option("--theta-deg", o.theta_deg, "Single scattering angle in degrees");
}

PhotonEnergy resolve_energy(const Options& o)
{
  const int given = static_cast<int>(o.energy_ev.has_value()) +
                    static_cast<int>(o.wavelength.has_value()) +
                    static_cast<int>(o.reduced_wavelength.has_value());
  if (given != 1) {
    throw std::invalid_argument(
        "exactly one of --energy-ev, --wavelength, --reduced-wavelength is required");
  }
  if (o.energy_ev) {
    return PhotonEnergy(*o.energy_ev);
  }
  if (o.wavelength) {
    return energy_from_wavelength(*o.wavelength);
  }
  return energy_from_reduced_wavelength(*o.reduced_wavelength);
}

EnergyCheck check_energy(PhotonEnergy energy, const Options& o, std::ostream& err)
{
  const ValidityStatus status = validate_low_energy(energy);
  if (status == ValidityStatus::Invalid) {
    if (!o.force) {
      throw ValidityError("energy " + fmt(energy.electron_volts()) +
                          " eV is at or above m c^2; pass --force to evaluate anyway");
    }
    err << "warning: energy " << fmt(energy.electron_volts())
        << " eV is outside the low-energy domain; results are extrapolated\n";
  } else if (status == ValidityStatus::Marginal) {
    err << "warning: energy " << fmt(energy.electron_volts())
        << " eV is within a decade of m c^2; low-energy amplitudes are marginal\n";
  }
  return o.force ? EnergyCheck::Force : EnergyCheck::Enforce;
}

TwoPhotonInState resolve_state(const Options& o)
{
  if (o.state) {
    if (*o.state == "bell-plus") {
      return TwoPhotonInState::bell_plus();
    }
    if (*o.state == "bell-minus") {
      return TwoPhotonInState::bell_minus();
    }
    if (*o.state == "product-21") {
      return TwoPhotonInState::product_21();
    }
    return TwoPhotonInState::product_12();
  }
  return {o.phi.value_or(0.0), o.rho.value_or(0.0)};
}

std::vector<double> resolve_angles_deg(const Options& o, std::string_view default_grid)
{
  if (o.theta_grid && o.theta_deg) {
    throw std::invalid_argument("--theta-grid and --theta-deg are mutually exclusive");
  }
  if (o.theta_deg) {
    return {*o.theta_deg};
  }
  const Grid grid = parse_grid(o.theta_grid ? std::string_view(*o.theta_grid) : default_grid);
  if (grid.start < 0.0 || grid.stop > 180.0) {
    throw std::invalid_argument("theta grid must stay within [0, 180] degrees");
  }
  return grid.values();
}

void describe(Table& t, std::string_view command, const Options& o, const TwoPhotonInState* state,
              const PhotonEnergy* energy, bool with_mechanism)
{
  t.meta.emplace_back("tool", "ppscat");
  t.meta.emplace_back("version", std::string(tool_version));
  t.meta.emplace_back("command", std::string(command));
  if (with_mechanism) {
    t.meta.emplace_back("mechanism", o.mechanism);
  }
  if (state != nullptr) {
    t.meta.emplace_back("phi", fmt(state->phi()));
    t.meta.emplace_back("rho", fmt(state->rho()));
  }
  if (energy != nullptr) {
    t.meta.emplace_back("energy_ev", fmt(energy->electron_volts()));
  }
}

Table cmd_dcs(const Options& o, std::ostream& err)
{
  const PhotonEnergy energy = resolve_energy(o);
  const EnergyCheck check = check_energy(energy, o, err);
  const TwoPhotonInState state = resolve_state(o);
  const Mechanism& mech = MechanismRegistry::builtin().get(o.mechanism);
  if (o.method == "closed" && o.mechanism != mechanisms::qed_low_energy_name) {
    throw std::invalid_argument("--method closed is only available for qed-low-energy");
  }

  Table t;
  describe(t, "dcs", o, &state, &energy, true);
  t.meta.emplace_back("method", o.method);
  t.columns = {"theta_deg", "theta_rad", "dcs_si_m2_sr", "dcs_natural_U"};
  for (const double deg : resolve_angles_deg(o, "0:180:1")) {
    const double theta = angles::deg_to_rad(deg);
    DcsValue dcs;
    if (o.method == "general") {
      dcs = dcs_general(state, mech, energy, theta, check);
    } else if (o.method == "closed") {
      dcs = dcs_qed_closed(state, energy, theta, check);
    } else {
      dcs = dcs_reduced(state, mech, energy, theta, check);
    }
    t.rows.push_back({deg, theta, dcs.value, in_natural_units(dcs, energy)});
  }
  return t;
}

Table cmd_total(const Options& o, std::ostream& err)
{
  const PhotonEnergy energy = resolve_energy(o);
  const EnergyCheck check = check_energy(energy, o, err);
  const TwoPhotonInState state = resolve_state(o);
  const Mechanism& mech = MechanismRegistry::builtin().get(o.mechanism);

  Table t;
  describe(t, "total", o, &state, &energy, true);
  t.columns = {"total_si_m2", "total_natural_U_sr"};
  const double total = total_xsec(state, mech, energy, check);
  t.rows.push_back({total, total / natural_dcs_unit(energy)});
  return t;
}

Table cmd_classify(const Options& o, std::ostream& err)
{
  const PhotonEnergy energy = resolve_energy(o);
  const EnergyCheck check = check_energy(energy, o, err);
  const Mechanism& mech = MechanismRegistry::builtin().get(o.mechanism);

  Table t;
  describe(t, "classify", o, nullptr, &energy, true);
  t.columns = {"theta_deg", "delta_beta_rad", "regime"};
  for (const double deg : resolve_angles_deg(o, "0:180:5")) {
    const double theta = angles::deg_to_rad(deg);
    const AmplitudeTable table = amplitude_table(mech, energy, theta, check);
    double phase = std::nan("");
    if (table.m_1212() != ComplexAmplitude{} && table.m_1221() != ComplexAmplitude{}) {
      phase = relative_phase(table.m_1212(), table.m_1221());
    }
    t.rows.push_back(
        {deg, phase, std::string(to_string(classify_regime(mech, energy, theta, check)))});
  }
  return t;
}

Table cmd_sample(const Options& o, std::ostream& err)
{
  SamplerConfig cfg;
  cfg.energy = resolve_energy(o);
  cfg.energy_check = check_energy(cfg.energy, o, err);
  cfg.state = resolve_state(o);
  cfg.mechanism = o.mechanism;
  cfg.n_events = o.n_events;
  cfg.seed = o.seed;

  const SampleRun run = run_sampler(cfg, o.threads);
  if (verbose()) {
    err << "info: sampled " << run.events.size() << " events, acceptance ratio "
        << fmt(run.acceptance_ratio()) << "\n";
  }

  Table t;
  describe(t, "sample", o, &cfg.state, &cfg.energy, true);
  t.meta.emplace_back("seed", std::to_string(cfg.seed));
  t.meta.emplace_back("rng", std::string(sampler_rng_id));
  t.meta.emplace_back("n_events", std::to_string(cfg.n_events));
  t.meta.emplace_back("acceptance_ratio", fmt(run.acceptance_ratio()));
  t.columns = {"event", "theta_rad", "azimuth_rad"};
  t.rows.reserve(run.events.size());
  for (std::size_t i = 0; i < run.events.size(); ++i) {
    t.rows.push_back(
        {static_cast<std::int64_t>(i), run.events[i].theta, run.events[i].azimuth});
  }
  return t;
}

Table cmd_coincidence(const Options& o)
{
  const PhotonEnergy energy = resolve_energy(o);
  const TwoPhotonInState state = resolve_state(o);
  if (o.detectors.size() != 2 || (o.detectors[0] != '1' && o.detectors[0] != '2') ||
      (o.detectors[1] != '1' && o.detectors[1] != '2')) {
    throw std::invalid_argument("--detectors must be one of 21, 12, 11, 22");
  }
  const DetectorPolarizations detectors{static_cast<Polarization>(o.detectors[0] - '0'),
                                        static_cast<Polarization>(o.detectors[1] - '0')};
  if (o.delta_grid && o.delta) {
    throw std::invalid_argument("--delta-grid and --delta are mutually exclusive");
  }
  std::vector<double> deltas;
  if (o.delta) {
    deltas = {*o.delta};
  } else if (o.delta_grid) {
    deltas = parse_grid(*o.delta_grid).values();
  } else {
    // One full modulation period, pi hbar c / E.
    const double period = std::numbers::pi * energy.reduced_wavelength();
    deltas = Grid{0.0, period, period / 100.0}.values();
  }

  Table t;
  describe(t, "coincidence", o, &state, &energy, false);
  t.meta.emplace_back("detectors", o.detectors);
  t.columns = {"delta_m", "g"};
  for (const double d : deltas) {
    t.rows.push_back({d, coincidence_probability(state, energy, {d}, detectors)});
  }
  return t;
}

Table cmd_hom(const Options& o)
{
  TwoPhotonModeState in = TwoPhotonModeState::symmetric_input();
  if (o.input == "antisymmetric") {
    in = TwoPhotonModeState::antisymmetric_input();
  } else if (o.input == "product") {
    in = TwoPhotonModeState::product(Port::A, Port::B);
  }
  const HomStatistics stats = hom_statistics(beam_splitter_transform(in));

  Table t;
  describe(t, "hom", o, nullptr, nullptr, false);
  t.meta.emplace_back("input", o.input);
  t.columns = {"p_coincidence", "p_both_c", "p_both_d"};
  t.rows.push_back({stats.p_coincidence, stats.p_both_c, stats.p_both_d});
  return t;
}

Table cmd_figure3(const Options& o, std::ostream& err)
{
  const PhotonEnergy energy = resolve_energy(o);
  check_energy(energy, o, err);
  const TwoPhotonInState product = TwoPhotonInState::product_12();
  const TwoPhotonInState plus = TwoPhotonInState::bell_plus();
  const TwoPhotonInState minus = TwoPhotonInState::bell_minus();

  Table t;
  describe(t, "figure3", o, nullptr, &energy, false);
  t.meta.emplace_back("mechanism", mechanisms::qed_low_energy_name);
  t.meta.emplace_back("unit_U_m2_sr", fmt(natural_dcs_unit(energy)));
  t.columns = {"theta_deg", "dcs_product_U", "dcs_bell_plus_U", "dcs_bell_minus_U"};
  for (const double deg : resolve_angles_deg(o, "0:90:1")) {
    const double theta = angles::deg_to_rad(deg);
    t.rows.push_back({deg, qed_closed_natural(product, theta), qed_closed_natural(plus, theta),
                      qed_closed_natural(minus, theta)});
  }
  return t;
}

std::string config_scalar(const nlohmann::json& value, const std::string& key)
{
  if (value.is_string()) {
    return value.get<std::string>();
  }
  if (value.is_number_integer()) {
    return std::to_string(value.get<long long>());
  }
  if (value.is_number_unsigned()) {
    return std::to_string(value.get<unsigned long long>());
  }
  if (value.is_number()) {
    return fmt(value.get<double>());
  }
  throw std::invalid_argument("config key '" + key + "' must be a string, number or boolean");
}

bool on_command_line(const std::vector<std::string>& args, const std::string& key)
{
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.starts_with(flag + "=");
  });
}

// Appends config-file settings that the command line does not already set.
void merge_config(const std::string& path, CLI::App& app, std::vector<std::string>& args)
{
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config file must hold a flat JSON object");
  }
  if (args.empty() || args.front().starts_with("-")) {
    throw std::invalid_argument("a subcommand must come first when using --config");
  }
  CLI::App* sub = app.get_subcommand(args.front());

  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    if (sub->get_option_no_throw("--" + key) == nullptr) {
      throw std::invalid_argument("config key '" + key + "' is not an option of '" +
                                  args.front() + "'");
    }
    bool shadowed = on_command_line(args, key);
    for (const auto& group : exclusive_groups) {
      if (group.contains(key)) {
        for (const auto& other : group) {
          shadowed = shadowed || on_command_line(args, other);
        }
      }
    }
    if (shadowed) {
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) {
        extra.push_back("--" + key);
      }
      continue;
    }
    extra.push_back("--" + key);
    extra.push_back(config_scalar(value, key));
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

void write_output(const Table& table, const Options& o, std::ostream& out)
{
  const std::string text = o.format == "json" ? io::emit_json(table) : io::emit_csv(table);
  if (o.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file '" + o.output + "'");
  }
  file << text;
  if (!file) {
    throw std::runtime_error("failed writing output file '" + o.output + "'");
  }
}

}  // namespace

std::vector<double> Grid::values() const
{
  const double span = stop - start;
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

Grid parse_grid(std::string_view spec)
{
  double parts[3] = {0.0, 0.0, 0.0};
  std::size_t begin = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? spec.find(':', begin) : spec.size();
    if (end == std::string_view::npos) {
      throw std::invalid_argument("grid must be start:stop:step, got '" + std::string(spec) + "'");
    }
    const std::string_view field = spec.substr(begin, end - begin);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() ||
        !std::isfinite(parts[i])) {
      throw std::invalid_argument("bad number '" + std::string(field) + "' in grid spec");
    }
    begin = end + 1;
  }
  const Grid grid{parts[0], parts[1], parts[2]};
  if (!(grid.step > 0.0)) {
    throw std::invalid_argument("grid step must be positive");
  }
  if (grid.start > grid.stop) {
    throw std::invalid_argument("grid start must not exceed stop");
  }
  return grid;
}

int run(const std::vector<std::string>& input_args, std::ostream& out, std::ostream& err)
{
  Options o;
  CLI::App app("Photon-photon scattering observables for polarization-entangled in-states",
               "ppscat");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));

  CLI::App* dcs = app.add_subcommand("dcs", "Differential cross section over a theta grid");
  add_mechanism(dcs, o);
  add_state(dcs, o);
  add_energy(dcs, o);
  add_theta(dcs, o);
  dcs->add_option("--method", o.method, "Evaluation path")
      ->check(CLI::IsMember({"reduced", "general", "closed"}));
  add_output(dcs, o);

  CLI::App* total = app.add_subcommand("total", "Total cross section");
  add_mechanism(total, o);
  add_state(total, o);
  add_energy(total, o);
  add_output(total, o);

  CLI::App* classify = app.add_subcommand("classify", "Interference regime per angle");
  add_mechanism(classify, o);
  add_energy(classify, o);
  add_theta(classify, o);
  add_output(classify, o);

  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo scattering events");
  add_mechanism(sample, o);
  add_state(sample, o);
  add_energy(sample, o);
  sample->add_option("-n,--n-events", o.n_events, "Number of events");
  sample->add_option("--seed", o.seed, "RNG seed");
  sample->add_option("--threads", o.threads, "Worker threads (output does not depend on it)")
      ->check(CLI::Range(1U, 1024U));
  add_output(sample, o);

  CLI::App* coincidence =
      app.add_subcommand("coincidence", "Delayed-coincidence rate versus separation");
  add_state(coincidence, o);
  add_energy(coincidence, o);
  coincidence->add_option("--delta-grid", o.delta_grid, "Separation grid start:stop:step, m");
  coincidence->add_option("--delta", o.delta, "Single separation along the beam, m");
  coincidence->add_option("--detectors", o.detectors,
                          "Polarizations at x and x' (21, 12, 11 or 22)");
  add_output(coincidence, o);

  CLI::App* hom = app.add_subcommand("hom", "Two photons on a 50/50 beam splitter");
  hom->add_option("--input", o.input, "Input state")
      ->check(CLI::IsMember({"symmetric", "antisymmetric", "product"}));
  add_output(hom, o);

  CLI::App* figure3 =
      app.add_subcommand("figure3", "QED DCS for product and Bell states in natural units");
  add_energy(figure3, o);
  add_theta(figure3, o);
  add_output(figure3, o);

  try {
    std::vector<std::string> args;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < input_args.size(); ++i) {
      const std::string& a = input_args[i];
      if (a == "--config") {
        if (i + 1 >= input_args.size()) {
          throw std::invalid_argument("--config needs a path");
        }
        config_path = input_args[++i];
      } else if (a.starts_with("--config=")) {
        config_path = a.substr(9);
      } else {
        args.push_back(a);
      }
    }
    if (config_path) {
      merge_config(*config_path, app, args);
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);

    Table table;
    if (dcs->parsed()) {
      table = cmd_dcs(o, err);
    } else if (total->parsed()) {
      table = cmd_total(o, err);
    } else if (classify->parsed()) {
      table = cmd_classify(o, err);
    } else if (sample->parsed()) {
      table = cmd_sample(o, err);
    } else if (coincidence->parsed()) {
      table = cmd_coincidence(o);
    } else if (hom->parsed()) {
      table = cmd_hom(o);
    } else {
      table = cmd_figure3(o, err);
    }
    write_output(table, o, out);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ValidityError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validity;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(args, out, err);
}

}  // namespace ppscat::cli
