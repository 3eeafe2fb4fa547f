#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collapse/bound_engine.hpp"
#include "collapse/constants.hpp"
#include "collapse/uncertain.hpp"

namespace collapse {

/// An experimental upper bound on lambda_CSL. Frequency-agnostic bounds
/// carry no band and never produce an exclusion region.
struct ExperimentRecord {
  std::string name;
  std::optional<FrequencyBand> band;
  std::optional<double> lambda_upper;              ///< s^-1
  std::optional<double> lambda_upper_uncertainty;  ///< s^-1
  std::string provenance;
  std::vector<std::string> annotations;

  bool operator==(const ExperimentRecord&) const = default;
};

/// A theoretical lower bound central * 10^(+-decade_uncertainty).
struct LowerBoundRecord {
  std::string name;
  double lambda_lower_central = 0.0;  ///< s^-1
  double decade_uncertainty = 0.0;
  std::string rationale;
  std::vector<std::string> annotations;

  double lower_edge() const;
  double upper_edge() const;

  bool operator==(const LowerBoundRecord&) const = default;
};

struct Catalog {
  std::vector<ExperimentRecord> experiments;
  std::vector<LowerBoundRecord> lower_bounds;

  const ExperimentRecord* find_experiment(std::string_view name) const;
  const LowerBoundRecord* find_lower_bound(std::string_view name) const;

  bool operator==(const Catalog&) const = default;
};

inline constexpr std::string_view kLisaPathfinderEntry = "lisa-pathfinder";
inline constexpr std::string_view kPostulatedScenarioEntry = "lisa-pathfinder-postulated";

void validate(const Catalog& catalog);

/// Published bounds on lambda_CSL. The LISA Pathfinder entry is computed
/// from the bound engine with default inputs, not stored.
Catalog builtin_catalog();

/// JSON text {"experiments": [...], "lower_bounds": [...]}. Doubles are
/// written in shortest round-trip form, so load(save(c)) == c.
std::string save_catalog(const Catalog& catalog);
/// Blank text is an empty catalog. Throws ValidationError on schema errors.
Catalog load_catalog(std::string_view text);
Catalog load_catalog_file(const std::filesystem::path& path);

struct ExclusionRegion {
  std::string experiment;
  FrequencyBand band;
  double lambda_boundary = 0.0;  ///< excluded above this, inside the band

  bool operator==(const ExclusionRegion&) const = default;
};

/// Inputs used to recompute the LISA Pathfinder boundary for a scenario.
struct ScenarioContext {
  TestMass test_mass = lisa_pathfinder_test_mass();
  double r_csl = 100e-9;
  PhysicalConstants constants{};
};

/// One region per banded experiment with an upper bound. A scenario adds a
/// "lisa-pathfinder-postulated" region whose boundary is recomputed through
/// the bound engine, over the LISA Pathfinder band.
std::vector<ExclusionRegion> exclusion_regions(const Catalog& catalog,
                                               const std::optional<NoiseSpec>& scenario = {},
                                               const ScenarioContext& context = {});

enum class OverlapClass { below, overlap, above };

std::string_view to_string(OverlapClass c);

/// below: the upper bound lies under the lower bound's whole error band;
/// overlap: inside it, edges inclusive; above: over it.
OverlapClass classify_overlap(double lambda_upper, const LowerBoundRecord& lower);

struct OverlapEntry {
  std::string upper_name;
  std::string lower_name;
  double lambda_upper = 0.0;
  double lower_edge = 0.0;
  double lower_central = 0.0;
  double upper_edge = 0.0;
  OverlapClass relation = OverlapClass::overlap;
};

/// Every (experimental upper bound, theoretical lower bound) pair.
std::vector<OverlapEntry> overlap_report(const Catalog& catalog);

struct DpComparison {
  UncertainValue lisa_sigma_min;          ///< m
  double cantilever_sigma_min = 1.5e-15;  ///< m
  double ratio = 0.0;
  std::string verdict;
  std::string nuclear_scale_note;
};

/// Diameter of the heaviest nuclei, about 15 fm.
inline constexpr double kLargestNuclearDiameter = 15e-15;

DpComparison dp_comparison(const std::optional<NoiseSpec>& scenario = {},
                           const ScenarioContext& context = {});

/// experiment,f_lo_hz,f_hi_hz,lambda_boundary_s^-1
void write_regions_csv(std::ostream& out, const std::vector<ExclusionRegion>& regions);
/// name,lambda_lower_central_s^-1,lambda_lower_min_s^-1,lambda_lower_max_s^-1,decade_uncertainty
void write_lower_bounds_csv(std::ostream& out, const Catalog& catalog);

}  // namespace collapse
