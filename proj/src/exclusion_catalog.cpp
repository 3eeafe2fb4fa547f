#include "collapse/exclusion_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "collapse/errors.hpp"

namespace collapse {

using nlohmann::json;

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json band_to_json(const std::optional<FrequencyBand>& band) {
  if (!band) return nullptr;
  return {{"f_lo_hz", band->f_lo}, {"f_hi_hz", band->f_hi}};
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + "." + key, "missing");
  return j.at(key);
}

double require_number(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw ValidationError(where + "." + key, "must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw ValidationError(where + "." + key, "must be a number or null");
  return j.at(key).get<double>();
}

std::string optional_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string()) throw ValidationError(where + "." + key, "must be a string");
  return j.at(key).get<std::string>();
}

std::vector<std::string> annotations_from(const json& j, const std::string& where) {
  std::vector<std::string> out;
  if (!j.contains("annotations")) return out;
  const json& a = j.at("annotations");
  if (!a.is_array()) throw ValidationError(where + ".annotations", "must be an array");
  for (const auto& s : a) {
    if (!s.is_string()) throw ValidationError(where + ".annotations", "entries must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

double LowerBoundRecord::lower_edge() const {
  return lambda_lower_central * std::pow(10.0, -decade_uncertainty);
}

double LowerBoundRecord::upper_edge() const {
  return lambda_lower_central * std::pow(10.0, decade_uncertainty);
}

const ExperimentRecord* Catalog::find_experiment(std::string_view name) const {
  auto it = std::find_if(experiments.begin(), experiments.end(),
                         [&](const ExperimentRecord& e) { return e.name == name; });
  return it == experiments.end() ? nullptr : &*it;
}

const LowerBoundRecord* Catalog::find_lower_bound(std::string_view name) const {
  auto it = std::find_if(lower_bounds.begin(), lower_bounds.end(),
                         [&](const LowerBoundRecord& e) { return e.name == name; });
  return it == lower_bounds.end() ? nullptr : &*it;
}

void validate(const Catalog& catalog) {
  for (const auto& e : catalog.experiments) {
    const std::string where = "experiments[" + e.name + "]";
    if (e.name.empty()) throw ValidationError("experiments.name", "must not be empty");
    if (e.band) validate(*e.band);
    if (e.lambda_upper && !(*e.lambda_upper > 0.0))
      throw ValidationError(where + ".lambda_upper", "must be > 0");
    if (e.lambda_upper_uncertainty && !(*e.lambda_upper_uncertainty >= 0.0))
      throw ValidationError(where + ".lambda_upper_uncertainty", "must be >= 0");
  }
  for (const auto& l : catalog.lower_bounds) {
    const std::string where = "lower_bounds[" + l.name + "]";
    if (l.name.empty()) throw ValidationError("lower_bounds.name", "must not be empty");
    if (!(l.lambda_lower_central > 0.0))
      throw ValidationError(where + ".lambda_lower_central", "must be > 0");
    if (!(l.decade_uncertainty >= 0.0))
      throw ValidationError(where + ".decade_uncertainty", "must be >= 0");
  }
}

Catalog builtin_catalog() {
  const BoundResult lisa =
      lambda_csl_max(lisa_pathfinder_noise(), lisa_pathfinder_test_mass(), 100e-9);

  Catalog c;
  c.experiments = {
      {std::string(kLisaPathfinderEntry),
       lisa.band,
       lisa.bound.value,
       lisa.bound.sigma,
       "Differential acceleration noise of two free-falling test masses, "
       "sqrt(S_a) = 5.2 +- 0.1 fm s^-2/sqrt(Hz), all noise attributed to collapse",
       {"computed by the bound engine from the default inputs"}},
      {"ligo",
       FrequencyBand{10.0, 10e3},
       1e-5,
       std::nullopt,
       "Differential displacement noise of the LIGO test masses",
       {"approximate: flat summary of an externally computed, frequency-dependent boundary"}},
      {"nanocantilever",
       FrequencyBand{3.05e3, 3.15e3},
       2e-8,
       std::nullopt,
       "Excess heating of a millikelvin-cooled nanocantilever fundamental mode near 3.1 kHz",
       {"single resonance; band drawn as 3.1 kHz +- 50 Hz"}},
      {"ge-xray",
       FrequencyBand{std::pow(10.0, 17.5), std::pow(10.0, 18.5)},
       1e-11,
       std::nullopt,
       "Spontaneous x-ray emission rate from germanium",
       {"probe frequency about 1e18 s^-1; band drawn as one decade around it",
        "bound could be greatly reduced if the collapse noise is non-white at this frequency"}},
      {"matter-wave-feldmann-tumulka",
       std::nullopt,
       1e-5,
       std::nullopt,
       "Matter-wave interferometry of organic molecules up to 430 atoms (Feldmann-Tumulka analysis)",
       {"frequency-agnostic"}},
      {"matter-wave-interferometry",
       std::nullopt,
       5e-6,
       std::nullopt,
       "Later matter-wave interferometry experiment from the same group",
       {"frequency-agnostic"}},
      {"cold-atoms",
       std::nullopt,
       5e-8,
       std::nullopt,
       "Heating rate of a picokelvin Rb cloud",
       {"depends on the temperature of the CSL noise field",
        "depends on the rest frame of the CSL noise field"}},
      {"igm-heating",
       std::nullopt,
       1e-9,
       std::nullopt,
       "Heating of the intergalactic medium",
       {"non-laboratory (cosmological) bound",
        "sensitive to the temperature of the collapse noise field"}},
  };
  c.lower_bounds = {
      {"adler", 2.2e-8, 2.0,
       "Latent image formation in photographic emulsion must complete fast enough",
       {"figure caption quotes the central value as 1e-8"}},
      {"bassi-vision", 1e-10, 2.0,
       "Human perception of a six-photon superposition must produce a definite outcome",
       {}},
      {"gpr", 1e-17, 0.0,
       "An apparatus of about 1e15 nucleons must settle within about 1e-7 s",
       {}},
  };
  return c;
}

std::string save_catalog(const Catalog& catalog) {
  json experiments = json::array();
  for (const auto& e : catalog.experiments) {
    experiments.push_back({{"name", e.name},
                           {"band", band_to_json(e.band)},
                           {"lambda_upper", optional_to_json(e.lambda_upper)},
                           {"lambda_upper_uncertainty", optional_to_json(e.lambda_upper_uncertainty)},
                           {"provenance", e.provenance},
                           {"annotations", e.annotations}});
  }
  json lower = json::array();
  for (const auto& l : catalog.lower_bounds) {
    lower.push_back({{"name", l.name},
                     {"lambda_lower_central", l.lambda_lower_central},
                     {"decade_uncertainty", l.decade_uncertainty},
                     {"rationale", l.rationale},
                     {"annotations", l.annotations}});
  }
  return json{{"experiments", experiments}, {"lower_bounds", lower}}.dump(2) + "\n";
}

Catalog load_catalog(std::string_view text) {
  if (std::all_of(text.begin(), text.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }))
    return {};

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("catalog", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("catalog", "top level must be an object");

  Catalog c;
  if (root.contains("experiments")) {
    const json& arr = root.at("experiments");
    if (!arr.is_array()) throw ValidationError("experiments", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& j = arr[i];
      const std::string where = "experiments[" + std::to_string(i) + "]";
      ExperimentRecord e;
      const json& name = require(j, "name", where);
      if (!name.is_string()) throw ValidationError(where + ".name", "must be a string");
      e.name = name.get<std::string>();
      if (j.contains("band") && !j.at("band").is_null()) {
        const json& b = j.at("band");
        e.band = FrequencyBand{require_number(b, "f_lo_hz", where + ".band"),
                               require_number(b, "f_hi_hz", where + ".band")};
      }
      e.lambda_upper = optional_number(j, "lambda_upper", where);
      e.lambda_upper_uncertainty = optional_number(j, "lambda_upper_uncertainty", where);
      e.provenance = optional_string(j, "provenance", where);
      e.annotations = annotations_from(j, where);
      c.experiments.push_back(std::move(e));
    }
  }
  if (root.contains("lower_bounds")) {
    const json& arr = root.at("lower_bounds");
    if (!arr.is_array()) throw ValidationError("lower_bounds", "must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const json& j = arr[i];
      const std::string where = "lower_bounds[" + std::to_string(i) + "]";
      LowerBoundRecord l;
      const json& name = require(j, "name", where);
      if (!name.is_string()) throw ValidationError(where + ".name", "must be a string");
      l.name = name.get<std::string>();
      l.lambda_lower_central = require_number(j, "lambda_lower_central", where);
      l.decade_uncertainty = optional_number(j, "decade_uncertainty", where).value_or(0.0);
      l.rationale = optional_string(j, "rationale", where);
      l.annotations = annotations_from(j, where);
      c.lower_bounds.push_back(std::move(l));
    }
  }
  validate(c);
  return c;
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str());
}

std::vector<ExclusionRegion> exclusion_regions(const Catalog& catalog,
                                               const std::optional<NoiseSpec>& scenario,
                                               const ScenarioContext& context) {
  std::vector<ExclusionRegion> regions;
  for (const auto& e : catalog.experiments) {
    if (!e.band || !e.lambda_upper) continue;
    regions.push_back({e.name, *e.band, *e.lambda_upper});
  }
  if (scenario) {
    const BoundResult b =
        lambda_csl_max(*scenario, context.test_mass, context.r_csl, context.constants);
    const ExperimentRecord* lisa = catalog.find_experiment(kLisaPathfinderEntry);
    const FrequencyBand band = lisa && lisa->band ? *lisa->band : scenario->band;
    regions.push_back({std::string(kPostulatedScenarioEntry), band, b.bound.value});
  }
  return regions;
}

std::string_view to_string(OverlapClass c) {
  switch (c) {
    case OverlapClass::below:
      return "below";
    case OverlapClass::overlap:
      return "overlap";
    case OverlapClass::above:
      return "above";
  }
  return "?";
}

OverlapClass classify_overlap(double lambda_upper, const LowerBoundRecord& lower) {
  if (lambda_upper < lower.lower_edge()) return OverlapClass::below;
  if (lambda_upper > lower.upper_edge()) return OverlapClass::above;
  return OverlapClass::overlap;
}

std::vector<OverlapEntry> overlap_report(const Catalog& catalog) {
  std::vector<OverlapEntry> out;
  for (const auto& e : catalog.experiments) {
    if (!e.lambda_upper) continue;
    for (const auto& l : catalog.lower_bounds) {
      out.push_back({e.name, l.name, *e.lambda_upper, l.lower_edge(), l.lambda_lower_central,
                     l.upper_edge(), classify_overlap(*e.lambda_upper, l)});
    }
  }
  return out;
}

DpComparison dp_comparison(const std::optional<NoiseSpec>& scenario,
                           const ScenarioContext& context) {
  const NoiseSpec noise = scenario.value_or(lisa_pathfinder_noise());
  DpComparison out;
  out.lisa_sigma_min = sigma_dp_min(noise, context.test_mass, context.constants).bound;
  out.ratio = out.lisa_sigma_min.value / out.cantilever_sigma_min;
  out.verdict = out.ratio > 1.0 ? "LISA dominates" : "cantilever dominates";
  out.nuclear_scale_note = out.lisa_sigma_min.value > kLargestNuclearDiameter
                               ? "larger than the size of any nucleus"
                               : "within nuclear size scales";
  return out;
}

void write_regions_csv(std::ostream& out, const std::vector<ExclusionRegion>& regions) {
  out << "experiment,f_lo_hz,f_hi_hz,lambda_boundary_s^-1\n";
  for (const auto& r : regions)
    out << r.experiment << ',' << number(r.band.f_lo) << ',' << number(r.band.f_hi) << ','
        << number(r.lambda_boundary) << '\n';
}

void write_lower_bounds_csv(std::ostream& out, const Catalog& catalog) {
  out << "name,lambda_lower_central_s^-1,lambda_lower_min_s^-1,lambda_lower_max_s^-1,"
         "decade_uncertainty\n";
  for (const auto& l : catalog.lower_bounds)
    out << l.name << ',' << number(l.lambda_lower_central) << ',' << number(l.lower_edge()) << ','
        << number(l.upper_edge()) << ',' << number(l.decade_uncertainty) << '\n';
}

}  // namespace collapse
