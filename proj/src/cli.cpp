#include "collapse/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collapse/errors.hpp"
#include "collapse/exclusion_catalog.hpp"
#include "collapse/units.hpp"

namespace collapse::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr double kMassResidualWarning = 0.05;

// ---------------------------------------------------------------- config file

double number_at(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(where + "." + key, "must be a number");
  return v.get<double>();
}

Material material_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where, "must be an object");
  if (j.contains("components")) {
    const json& arr = j.at("components");
    if (!arr.is_array()) throw ValidationError(where + ".components", "must be an array");
    std::vector<AlloyComponent> parts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = where + ".components[" + std::to_string(i) + "]";
      if (!arr[i].contains("material") || !arr[i].contains("mass_fraction"))
        throw ValidationError(w, "needs material and mass_fraction");
      parts.push_back({material_from(arr[i].at("material"), w + ".material"),
                       number_at(arr[i], "mass_fraction", w)});
    }
    Material m = alloy_material(parts);
    if (j.contains("name")) m.name = j.at("name").get<std::string>();
    return m;
  }
  for (const char* key : {"density", "lattice_constant"})
    if (!j.contains(key)) throw ValidationError(where + "." + key, "missing");
  Material m{j.value("name", std::string("custom")), number_at(j, "density", where),
             number_at(j, "lattice_constant", where)};
  return m;
}

FrequencyBand band_from(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("f_lo_hz") || !j.contains("f_hi_hz"))
    throw ValidationError(where, "needs f_lo_hz and f_hi_hz");
  return {number_at(j, "f_lo_hz", where), number_at(j, "f_hi_hz", where)};
}

FrequencyBand parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("band", "expected <f_lo:f_hi> in Hz");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    FrequencyBand b{std::stod(lo, &used_lo), std::stod(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument("trailing");
    return b;
  } catch (const std::logic_error&) {
    throw ValidationError("band", "expected <f_lo:f_hi> in Hz");
  }
}

void apply_preset(RunConfig& config, const std::string& name) {
  auto tm = preset_test_mass(name);
  if (!tm) throw ValidationError("preset", "unknown preset '" + name + "'");
  config.preset = name;
  config.test_mass = *tm;
}

// ------------------------------------------------------------------ output

json quantity(double value, std::string_view unit) {
  return {{"value", value}, {"unit", unit}};
}

json quantity(const UncertainValue& v, std::string_view unit) {
  return {{"value", v.value}, {"sigma", v.sigma}, {"unit", unit}};
}

json constants_json(const PhysicalConstants& c) {
  return {{"hbar", quantity(c.hbar, "J s")},
          {"G", quantity(c.G, "m^3 kg^-1 s^-2")},
          {"m0", quantity(c.m0, "kg")},
          {"m0_convention", c == PhysicalConstants{} ? std::string(kNucleonMassConvention)
                                                     : std::string("user supplied")}};
}

json bound_json(const BoundResult& r, const RunConfig& config) {
  const bool csl = r.model == ModelTag::csl;
  json inputs = {
      {"preset", config.preset},
      {"test_mass",
       {{"mass", quantity(config.test_mass.mass, "kg")},
        {"side_length", quantity(config.test_mass.side_length, "m")},
        {"material",
         {{"name", config.test_mass.material.name},
          {"density", quantity(config.test_mass.material.density, "kg m^-3")},
          {"lattice_constant", quantity(config.test_mass.material.lattice_constant, "m")}}}}},
      {"asd", quantity(config.noise.asd, "m s^-2 Hz^-1/2")},
      {"n_masses", config.noise.n_masses}};
  if (csl) inputs["r_csl"] = quantity(config.r_csl, "m");

  json display = csl ? quantity(scale(r.bound, 1e8), "1e-8 s^-1")
                     : quantity(scale(r.bound, 1.0 / units::femtometre), "fm");

  json warnings = json::array();
  const double residual = cube_mass_residual(config.test_mass);
  if (residual > kMassResidualWarning)
    warnings.push_back("test mass differs from density * side^3 by " +
                       std::to_string(residual * 100.0) + "%");

  return {{"model", to_string(r.model)},
          {"kind", r.kind == BoundKind::upper ? "upper" : "lower"},
          {"parameter", r.parameter_name},
          {"bound", quantity(r.bound, csl ? "s^-1" : "m")},
          {"display", display},
          {"d_max", quantity(r.d_max, "kg^2 m^2 s^-3")},
          {"band", {{"f_lo", r.band.f_lo}, {"f_hi", r.band.f_hi}, {"unit", "Hz"}}},
          {"inputs", inputs},
          {"constants", constants_json(config.constants)},
          {"metadata",
           {{"spectral_convention", "single-sided PSD; white force S_F = 2 D"},
            {"attribution", "all measured noise attributed to collapse"},
            {"uncertainty", "first order, independent inputs, 1 sigma"},
            {"alloy_weighting", "mass-fraction arithmetic mean"}}},
          {"warnings", warnings},
          {"inputs_digest", r.inputs_digest}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ------------------------------------------------------------------ flags

struct PhysicsFlags {
  std::optional<double> asd, asd_sigma, mass, side, density, lattice, r_csl;
  std::optional<std::string> band, preset;
  bool postulated = false;
};

void add_physics_flags(CLI::App* cmd, PhysicsFlags& f) {
  cmd->add_option("--asd", f.asd, "sqrt(S_a) in m s^-2 Hz^-1/2");
  cmd->add_option("--asd-sigma", f.asd_sigma, "1-sigma uncertainty of --asd");
  cmd->add_option("--band", f.band, "measurement band <f_lo:f_hi> in Hz");
  cmd->add_option("--mass", f.mass, "test mass in kg");
  cmd->add_option("--side", f.side, "cube side length in m");
  cmd->add_option("--density", f.density, "material density in kg m^-3");
  cmd->add_option("--lattice", f.lattice, "lattice constant in m");
  cmd->add_option("--r-csl", f.r_csl, "CSL correlation length in m");
  cmd->add_option("--preset", f.preset, "test-mass preset (lisa-pathfinder)");
  cmd->add_flag("--postulated", f.postulated, "use the postulated 3.5 fm s^-2/sqrt(Hz) sensitivity");
}

void apply_physics_flags(RunConfig& c, const PhysicsFlags& f) {
  if (f.preset) apply_preset(c, *f.preset);
  if (f.mass) c.test_mass.mass = *f.mass;
  if (f.side) c.test_mass.side_length = *f.side;
  if (f.density) {
    c.test_mass.material.density = *f.density;
    c.test_mass.material.name = "custom";
  }
  if (f.lattice) {
    c.test_mass.material.lattice_constant = *f.lattice;
    c.test_mass.material.name = "custom";
  }
  if (f.asd) c.noise.asd = {*f.asd, 0.0};
  if (f.asd_sigma) c.noise.asd.sigma = *f.asd_sigma;
  if (f.band) c.noise.band = parse_band(*f.band);
  if (f.r_csl) c.r_csl = *f.r_csl;
}

void validate_run(const RunConfig& c) {
  validate(c.test_mass);
  validate(c.noise);
  validate(c.constants);
  if (!(c.r_csl > 0.0)) throw ValidationError("r_csl", "must be > 0");
}

}  // namespace

RunConfig apply_config_text(std::string_view text, RunConfig c) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("config", "top level must be an object");

  try {
    if (root.contains("preset")) apply_preset(c, root.at("preset").get<std::string>());
    if (root.contains("test_mass")) {
      const json& t = root.at("test_mass");
      if (t.contains("mass")) c.test_mass.mass = number_at(t, "mass", "test_mass");
      if (t.contains("side_length"))
        c.test_mass.side_length = number_at(t, "side_length", "test_mass");
      if (t.contains("material")) c.test_mass.material = material_from(t.at("material"), "test_mass.material");
    }
    if (root.contains("noise")) {
      const json& n = root.at("noise");
      if (n.contains("asd")) c.noise.asd = {number_at(n, "asd", "noise"), 0.0};
      if (n.contains("asd_sigma")) c.noise.asd.sigma = number_at(n, "asd_sigma", "noise");
      if (n.contains("band")) c.noise.band = band_from(n.at("band"), "noise.band");
      if (n.contains("n_masses")) c.noise.n_masses = n.at("n_masses").get<int>();
    }
    if (root.contains("r_csl")) c.r_csl = number_at(root, "r_csl", "config");
    if (root.contains("constants")) {
      const json& k = root.at("constants");
      if (k.contains("hbar")) c.constants.hbar = number_at(k, "hbar", "constants");
      if (k.contains("G")) c.constants.G = number_at(k, "G", "constants");
      if (k.contains("m0")) c.constants.m0 = number_at(k, "m0", "constants");
    }
    if (root.contains("catalog")) c.catalog_path = root.at("catalog").get<std::string>();
    if (root.contains("simulation")) {
      const json& s = root.at("simulation");
      auto& sim = c.simulation;
      if (s.contains("d_c")) sim.d_c = number_at(s, "d_c", "simulation");
      if (s.contains("mass")) sim.mass = number_at(s, "mass", "simulation");
      if (s.contains("sample_rate")) sim.sample_rate = number_at(s, "sample_rate", "simulation");
      if (s.contains("duration")) sim.duration = number_at(s, "duration", "simulation");
      if (s.contains("segment_length")) sim.segment_length = s.at("segment_length").get<Eigen::Index>();
      if (s.contains("n_segments")) sim.n_segments = s.at("n_segments").get<Eigen::Index>();
      if (s.contains("n_masses")) sim.n_masses = s.at("n_masses").get<int>();
      if (s.contains("seed")) sim.seed = s.at("seed").get<std::uint64_t>();
    }
  } catch (const json::type_error& e) {
    throw ValidationError("config", std::string("wrong value type: ") + e.what());
  }
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds on spontaneous-collapse parameters from acceleration noise",
               "collapse-bounds"};
  app.require_subcommand(1);
  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "JSON config file (default: $COLLAPSE_BOUNDS_CONFIG)");

  // bound
  auto* bound = app.add_subcommand("bound", "Compute lambda_CSL max or sigma_DP min");
  bound->fallthrough();
  std::string model;
  bound->add_option("model", model, "csl or dp")->required()->check(CLI::IsMember({"csl", "dp"}));
  PhysicsFlags bound_flags;
  add_physics_flags(bound, bound_flags);
  std::optional<std::string> bound_out;
  bound->add_option("--out", bound_out, "also write the JSON result here");

  // exclusion-plot
  auto* plot = app.add_subcommand("exclusion-plot", "Write exclusion-region and lower-bound CSVs");
  plot->fallthrough();
  PhysicsFlags plot_flags;
  add_physics_flags(plot, plot_flags);
  std::string plot_out = ".";
  plot->add_option("--out", plot_out, "output directory");
  std::optional<std::string> plot_catalog;
  plot->add_option("--catalog", plot_catalog, "catalog JSON file (default: built-in)");

  // verify
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the noise attribution chain");
  verify->fallthrough();
  std::optional<double> v_dc, v_mass, v_rate, v_duration;
  std::optional<Eigen::Index> v_seglen, v_segments;
  std::optional<int> v_n_masses;
  std::optional<std::uint64_t> v_seed;
  int v_trials = 1;
  std::optional<std::string> v_out, v_psd_out;
  verify->add_option("--dc", v_dc, "collapse-force strength D in kg^2 m^2 s^-3");
  verify->add_option("--mass", v_mass, "test mass in kg");
  verify->add_option("--sample-rate", v_rate, "Hz");
  verify->add_option("--duration", v_duration, "s");
  verify->add_option("--segment-length", v_seglen, "samples per periodogram segment");
  verify->add_option("--segments", v_segments, "number of segments (>= 8)");
  verify->add_option("--n-masses", v_n_masses, "1 or 2");
  verify->add_option("--seed", v_seed, "64-bit seed");
  verify->add_option("--trials", v_trials, "independent seeds for an ensemble check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", v_out, "also write the JSON report here");
  verify->add_option("--psd-out", v_psd_out, "write the estimated PSD as CSV");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Inspect the bound catalog");
  catalog->require_subcommand(1);
  catalog->fallthrough();
  std::optional<std::string> catalog_file;
  catalog->add_option("--catalog", catalog_file, "catalog JSON file (default: built-in)");
  auto* cat_list = catalog->add_subcommand("list", "List entries");
  cat_list->fallthrough();
  auto* cat_show = catalog->add_subcommand("show", "Show one entry, or the whole catalog as JSON");
  cat_show->fallthrough();
  std::optional<std::string> show_name;
  cat_show->add_option("name", show_name, "entry name");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    RunConfig config;
    if (!config_path) {
      if (const char* env = std::getenv(kConfigEnvVar); env && *env) config_path = env;
    }
    if (config_path) config = apply_config_text(read_file(*config_path), config);

    if (bound->parsed()) {
      if (bound_flags.postulated && bound_flags.asd)
        throw ValidationError("asd", "--asd and --postulated are mutually exclusive");
      apply_physics_flags(config, bound_flags);
      if (bound_flags.postulated) {
        const FrequencyBand band = config.noise.band;
        config.noise = postulated_noise();
        config.noise.band = band;
      }
      validate_run(config);
      const BoundResult r = model == "csl"
                                ? lambda_csl_max(config.noise, config.test_mass, config.r_csl,
                                                 config.constants)
                                : sigma_dp_min(config.noise, config.test_mass, config.constants);
      const std::string text = bound_json(r, config).dump(2) + "\n";
      if (bound_out) write_file(*bound_out, text);
      out << text;
      return kOk;
    }

    if (plot->parsed()) {
      apply_physics_flags(config, plot_flags);
      validate_run(config);
      if (plot_catalog) config.catalog_path = plot_catalog;
      Catalog cat;
      if (config.catalog_path) {
        cat = load_catalog(read_file(*config.catalog_path));
      } else {
        cat = builtin_catalog();
        // The built-in LISA entry follows the run's inputs.
        for (auto& e : cat.experiments) {
          if (e.name != kLisaPathfinderEntry) continue;
          const BoundResult b =
              lambda_csl_max(config.noise, config.test_mass, config.r_csl, config.constants);
          e.band = config.noise.band;
          e.lambda_upper = b.bound.value;
          e.lambda_upper_uncertainty = b.bound.sigma;
        }
      }
      const ScenarioContext ctx{config.test_mass, config.r_csl, config.constants};
      std::optional<NoiseSpec> scenario;
      if (plot_flags.postulated) {
        scenario = postulated_noise();
        scenario->band = config.noise.band;
      }
      const auto regions = exclusion_regions(cat, scenario, ctx);

      std::error_code ec;
      fs::create_directories(plot_out, ec);
      if (ec) throw IoError("cannot create " + plot_out + ": " + ec.message());
      std::ostringstream regions_csv, lower_csv;
      write_regions_csv(regions_csv, regions);
      write_lower_bounds_csv(lower_csv, cat);
      const fs::path regions_path = fs::path(plot_out) / "exclusion_regions.csv";
      const fs::path lower_path = fs::path(plot_out) / "lower_bounds.csv";
      write_file(regions_path, regions_csv.str());
      write_file(lower_path, lower_csv.str());

      json overlap = json::array();
      for (const auto& o : overlap_report(cat))
        overlap.push_back({{"upper", o.upper_name},
                           {"lower", o.lower_name},
                           {"lambda_upper", o.lambda_upper},
                           {"lower_range", {o.lower_edge, o.upper_edge}},
                           {"relation", to_string(o.relation)}});
      const DpComparison dp = dp_comparison(
          plot_flags.postulated ? scenario : std::optional<NoiseSpec>(config.noise), ctx);
      json summary = {
          {"regions_csv", regions_path.string()},
          {"lower_bounds_csv", lower_path.string()},
          {"regions", regions.size()},
          {"overlap", overlap},
          {"dp_comparison",
           {{"lisa_sigma_min", quantity(scale(dp.lisa_sigma_min, 1.0 / units::femtometre), "fm")},
            {"cantilever_sigma_min", quantity(dp.cantilever_sigma_min / units::femtometre, "fm")},
            {"ratio", dp.ratio},
            {"verdict", dp.verdict},
            {"nuclear_scale", dp.nuclear_scale_note}}}};
      out << summary.dump(2) << "\n";
      return kOk;
    }

    if (verify->parsed()) {
      SimulationConfig sim = config.simulation;
      if (v_dc) sim.d_c = *v_dc;
      if (v_mass) sim.mass = *v_mass;
      if (v_rate) sim.sample_rate = *v_rate;
      if (v_duration) sim.duration = *v_duration;
      if (v_seglen) sim.segment_length = *v_seglen;
      if (v_segments) sim.n_segments = *v_segments;
      if (v_n_masses) sim.n_masses = *v_n_masses;
      if (v_seed) sim.seed = *v_seed;
      validate(sim);

      const AttributionReport r = verify_attribution(sim);
      json report = {
          {"config",
           {{"seed", sim.seed},
            {"mass", quantity(sim.mass, "kg")},
            {"sample_rate", quantity(sim.sample_rate, "Hz")},
            {"samples", sim.samples()},
            {"segment_length", sim.segment_length},
            {"n_segments", sim.n_segments},
            {"n_masses", sim.n_masses}}},
          {"d_c_in", quantity(r.d_c_in, "kg^2 m^2 s^-3")},
          {"d_c_recovered", quantity(r.d_c_recovered, "kg^2 m^2 s^-3")},
          {"z_score", r.z_score},
          {"z_threshold", kAttributionZThreshold},
          {"asd_expected", quantity(r.asd_expected, "m s^-2 Hz^-1/2")},
          {"asd_recovered", quantity(r.asd_recovered, "m s^-2 Hz^-1/2")},
          {"passed", r.passed}};
      bool ok = r.passed;
      if (v_trials > 1) {
        const EnsembleReport e = verify_ensemble(sim, v_trials);
        const bool ensemble_ok = std::abs(e.relative_bias) <= 0.01;
        ok = ok && ensemble_ok;
        report["ensemble"] = {{"trials", e.trials},
                              {"first_seed", sim.seed},
                              {"mean_recovered", quantity(e.mean_recovered, "kg^2 m^2 s^-3")},
                              {"relative_bias", e.relative_bias},
                              {"pass_fraction", e.pass_fraction},
                              {"passed", ensemble_ok}};
      }
      const std::string text = report.dump(2) + "\n";
      if (v_out) write_file(*v_out, text);
      if (v_psd_out) {
        std::ostringstream csv;
        csv << "frequency_hz,psd_m2_s-4_per_hz\n";
        char line[80];
        for (Eigen::Index i = 0; i < r.spectrum.psd.size(); ++i) {
          std::snprintf(line, sizeof line, "%.10g,%.10g\n", r.spectrum.frequencies[i],
                        r.spectrum.psd[i]);
          csv << line;
        }
        write_file(*v_psd_out, csv.str());
      }
      out << text;
      return ok ? kOk : kVerificationFailed;
    }

    if (catalog->parsed()) {
      if (catalog_file) config.catalog_path = catalog_file;
      const Catalog cat =
          config.catalog_path ? load_catalog(read_file(*config.catalog_path)) : builtin_catalog();
      if (cat_list->parsed()) {
        char line[160];
        for (const auto& e : cat.experiments) {
          std::string band = "-";
          if (e.band) {
            char b[64];
            std::snprintf(b, sizeof b, "%.3g-%.3g Hz", e.band->f_lo, e.band->f_hi);
            band = b;
          }
          std::string bound = "-";
          if (e.lambda_upper) {
            char b[64];
            std::snprintf(b, sizeof b, "%.3g s^-1", *e.lambda_upper);
            bound = b;
          }
          std::snprintf(line, sizeof line, "upper  %-30s %-24s %s\n", e.name.c_str(), band.c_str(),
                        bound.c_str());
          out << line;
        }
        for (const auto& l : cat.lower_bounds) {
          std::snprintf(line, sizeof line, "lower  %-30s %-24s %.3g s^-1 (x10^+-%g)\n",
                        l.name.c_str(), "-", l.lambda_lower_central, l.decade_uncertainty);
          out << line;
        }
        return kOk;
      }
      const json whole = json::parse(save_catalog(cat));
      if (!show_name) {
        out << whole.dump(2) << "\n";
        return kOk;
      }
      for (const char* section : {"experiments", "lower_bounds"})
        for (const auto& entry : whole.at(section))
          if (entry.at("name") == *show_name) {
            out << entry.dump(2) << "\n";
            return kOk;
          }
      throw ValidationError("name", "no catalog entry '" + *show_name + "'");
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace collapse::cli
