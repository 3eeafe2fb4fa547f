#include <doctest.h>

#include <sstream>

#include "collapse/errors.hpp"
#include "collapse/exclusion_catalog.hpp"
#include "test_support.hpp"

using namespace collapse;
using collapse::testing::rel_diff;

TEST_CASE("builtin catalog lookups") {
  const Catalog c = builtin_catalog();
  const auto* lisa = c.find_experiment("lisa-pathfinder");
  REQUIRE(lisa);
  CHECK(rel_diff(*lisa->lambda_upper, 2.96e-8) < 0.01);
  CHECK(*lisa->band == FrequencyBand{0.7e-3, 20e-3});

  const auto* ge = c.find_experiment("ge-xray");
  REQUIRE(ge);
  CHECK(*ge->lambda_upper == 1e-11);
  CHECK(ge->band->f_lo < 1e18);
  CHECK(ge->band->f_hi > 1e18);
  CHECK(ge->annotations.size() == 2);

  const auto* ligo = c.find_experiment("ligo");
  REQUIRE(ligo);
  CHECK(*ligo->band == FrequencyBand{10.0, 10e3});
  CHECK(*ligo->lambda_upper == 1e-5);

  const auto* cantilever = c.find_experiment("nanocantilever");
  REQUIRE(cantilever);
  CHECK(*cantilever->lambda_upper == 2e-8);
  CHECK(cantilever->band->f_lo < 3.1e3);
  CHECK(cantilever->band->f_hi > 3.1e3);

  CHECK(*c.find_experiment("matter-wave-feldmann-tumulka")->lambda_upper == 1e-5);
  CHECK(*c.find_experiment("matter-wave-interferometry")->lambda_upper == 5e-6);
  CHECK(*c.find_experiment("cold-atoms")->lambda_upper == 5e-8);
  CHECK(*c.find_experiment("igm-heating")->lambda_upper == 1e-9);

  const auto* adler = c.find_lower_bound("adler");
  REQUIRE(adler);
  CHECK(adler->lambda_lower_central == 2.2e-8);
  CHECK(adler->decade_uncertainty == 2.0);
  CHECK(rel_diff(adler->lower_edge(), 2.2e-10) < 1e-14);
  CHECK(rel_diff(adler->upper_edge(), 2.2e-6) < 1e-14);
  CHECK(c.find_lower_bound("bassi-vision")->lambda_lower_central == 1e-10);
  CHECK(c.find_lower_bound("gpr")->lambda_lower_central == 1e-17);
  CHECK(c.find_experiment("nope") == nullptr);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("exclusion regions from the builtin catalog") {
  const Catalog c = builtin_catalog();
  const auto regions = exclusion_regions(c);
  CHECK(regions.size() == 4);  // lisa, ligo, cantilever, x-ray
  for (const auto& r : regions) {
    const auto* e = c.find_experiment(r.experiment);
    REQUIRE(e);
    CHECK(r.lambda_boundary == *e->lambda_upper);
    CHECK(r.band == *e->band);
  }
  CHECK(regions.front().experiment == "lisa-pathfinder");
  CHECK(rel_diff(regions.front().lambda_boundary, 2.96e-8) < 0.01);
  for (const auto& r : regions) CHECK(r.experiment.rfind("matter-wave", 0) != 0);
}

TEST_CASE("postulated scenario adds the dashed-line region") {
  const Catalog c = builtin_catalog();
  const auto regions = exclusion_regions(c, postulated_noise());
  REQUIRE(regions.size() == 5);
  const auto& extra = regions.back();
  CHECK(extra.experiment == "lisa-pathfinder-postulated");
  CHECK(rel_diff(extra.lambda_boundary, 1.34e-8) < 0.01);
  CHECK(extra.band == FrequencyBand{0.7e-3, 20e-3});
  CHECK(extra.lambda_boundary ==
        lambda_csl_max(postulated_noise(), lisa_pathfinder_test_mass(), 100e-9).bound.value);
}

TEST_CASE("overlap classification") {
  const Catalog c = builtin_catalog();
  const auto& adler = *c.find_lower_bound("adler");
  const auto& gpr = *c.find_lower_bound("gpr");
  CHECK(classify_overlap(*c.find_experiment("lisa-pathfinder")->lambda_upper, adler) ==
        OverlapClass::overlap);
  CHECK(classify_overlap(1e-12, gpr) == OverlapClass::above);
  CHECK(classify_overlap(1e-17, gpr) == OverlapClass::overlap);
  CHECK(classify_overlap(1e-11, adler) == OverlapClass::below);
  CHECK(classify_overlap(1e-3, adler) == OverlapClass::above);

  const auto report = overlap_report(c);
  CHECK(report.size() == 8 * 3);
  bool found = false;
  for (const auto& o : report) {
    if (o.lower_name == "gpr") CHECK(o.relation == OverlapClass::above);
    if (o.upper_name == "lisa-pathfinder" && o.lower_name == "adler") {
      found = true;
      CHECK(o.relation == OverlapClass::overlap);
    }
  }
  CHECK(found);
}

TEST_CASE("property: overlap classes partition the line") {
  for (int i = 0; i < 500; ++i) {
    const LowerBoundRecord l{"x", collapse::testing::log_uniform(-18, -6),
                             collapse::testing::uniform(0.0, 3.0), "", {}};
    const double upper = collapse::testing::log_uniform(-22, -2);
    const auto cls = classify_overlap(upper, l);
    const bool below = upper < l.lower_edge();
    const bool above = upper > l.upper_edge();
    CHECK(int(below) + int(above) + int(!below && !above) == 1);
    CHECK((cls == OverlapClass::below) == below);
    CHECK((cls == OverlapClass::above) == above);
  }
}

TEST_CASE("DP comparison") {
  const DpComparison d = dp_comparison();
  CHECK(rel_diff(d.lisa_sigma_min.value, 40.1e-15) < 0.01);
  CHECK(d.cantilever_sigma_min == 1.5e-15);
  CHECK(rel_diff(d.ratio, 40.1 / 1.5) < 0.01);
  CHECK(d.verdict == "LISA dominates");
  CHECK(d.nuclear_scale_note == "larger than the size of any nucleus");

  const DpComparison pos = dp_comparison(postulated_noise());
  CHECK(rel_diff(pos.lisa_sigma_min.value, 52.2e-15) < 0.01);
}

TEST_CASE("catalog file round trip is bit exact") {
  const Catalog c = builtin_catalog();
  CHECK(load_catalog(save_catalog(c)) == c);

  for (int i = 0; i < 50; ++i) {
    Catalog r;
    const double lo = collapse::testing::log_uniform(-5, 10);
    r.experiments.push_back({"e" + std::to_string(i), FrequencyBand{lo, lo * 3.1},
                             collapse::testing::log_uniform(-20, -2),
                             collapse::testing::log_uniform(-22, -4), "p", {"a", "b"}});
    r.experiments.push_back({"f", std::nullopt, collapse::testing::log_uniform(-20, -2),
                             std::nullopt, "", {}});
    r.lower_bounds.push_back({"l", collapse::testing::log_uniform(-20, -2),
                              collapse::testing::uniform(0, 3), "why", {}});
    CHECK(load_catalog(save_catalog(r)) == r);
  }
}

TEST_CASE("catalog loading errors and empty input") {
  CHECK(load_catalog("") == Catalog{});
  CHECK(load_catalog("  \n") == Catalog{});
  CHECK(load_catalog(R"({"experiments": [], "lower_bounds": []})") == Catalog{});
  CHECK_THROWS_AS(load_catalog("{"), ValidationError);
  CHECK_THROWS_AS(load_catalog(R"({"experiments": [{"name": "x", "lambda_upper": -1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_catalog(R"({"experiments": [{"lambda_upper": 1}]})"), ValidationError);
  CHECK_THROWS_AS(
      load_catalog(R"({"experiments": [{"name": "x", "band": {"f_lo_hz": 2, "f_hi_hz": 1}}]})"),
      ValidationError);
  CHECK(exclusion_regions(Catalog{}).empty());
}

TEST_CASE("CSV emitters") {
  std::ostringstream regions;
  write_regions_csv(regions, {{"lisa-pathfinder", {7e-4, 2e-2}, 2.96e-8}});
  CHECK(regions.str() == "experiment,f_lo_hz,f_hi_hz,lambda_boundary_s^-1\n"
                         "lisa-pathfinder,0.0007,0.02,2.96e-08\n");

  std::ostringstream lower;
  Catalog c;
  c.lower_bounds.push_back({"adler", 2.2e-8, 2.0, "", {}});
  write_lower_bounds_csv(lower, c);
  CHECK(lower.str() ==
        "name,lambda_lower_central_s^-1,lambda_lower_min_s^-1,lambda_lower_max_s^-1,"
        "decade_uncertainty\nadler,2.2e-08,2.2e-10,2.2e-06,2\n");

  std::ostringstream empty;
  write_regions_csv(empty, {});
  CHECK(empty.str() == "experiment,f_lo_hz,f_hi_hz,lambda_boundary_s^-1\n");
}
