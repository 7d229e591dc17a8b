#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <variant>

#include "rdsim/config.hpp"
#include "rdsim/errors.hpp"

using namespace rdsim;
using nlohmann::ordered_json;

namespace {

ordered_json minimal() {
  return ordered_json::parse(R"({
    "model": {"type": "quadratic_reversible"},
    "diffusion": [1.0, 0.5, 0.25, 2.0],
    "initial": [
      {"type": "constant", "value": 1.0},
      {"type": "constant", "value": 1.0},
      {"type": "constant", "value": 1.0},
      {"type": "constant", "value": 1.0}
    ]
  })");
}

std::vector<std::string> issues_of(const ordered_json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const std::vector<std::string>& issues, const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const RunConfig cfg = parse_config(minimal());
  CHECK(cfg.model_type == "quadratic_reversible");
  CHECK(cfg.n_cells == 128);
  CHECK(cfg.length == 1.0);
  CHECK(cfg.solver.dt == 1e-3);
  CHECK(cfg.solver.t_end == 1.0);
  CHECK(cfg.solver.record_every == 1);
  CHECK(cfg.diagnostics.enabled);
  CHECK(cfg.diagnostics.d == 4.0);
  CHECK_FALSE(cfg.diagnostics.d_explicit);
  CHECK(cfg.transform.horizon == 1.0);
  CHECK_FALSE(cfg.transform.augment);
  CHECK(cfg.csv_path == "run.csv");
  CHECK(cfg.report_path == "report.json");
  CHECK(cfg.content_hash.size() == 16);
  CHECK(cfg.echo == minimal());
}

TEST_CASE("content hash ignores key order but not values") {
  auto a = minimal();
  ordered_json b;
  for (auto it = a.rbegin(); it != a.rend(); ++it) b[it.key()] = it.value();
  CHECK(parse_config(a).content_hash == parse_config(b).content_hash);
  a["seed"] = 7;
  CHECK(parse_config(a).content_hash != parse_config(b).content_hash);
}

TEST_CASE("diagnostics d must exceed every diffusion coefficient") {
  auto doc = minimal();
  doc["diagnostics"] = {{"d", 2.0}};
  const auto issues = issues_of(doc);
  REQUIRE(issues.size() == 1);
  CHECK(has_issue(issues, "diagnostics.d: must be strictly greater than max d_i = 2"));
  doc["diagnostics"]["d"] = 2.5;
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.diagnostics.d == 2.5);
  CHECK(cfg.diagnostics.d_explicit);
  doc["diagnostics"] = {{"enabled", false}, {"d", 1.0}};
  CHECK(issues_of(doc).empty());
}

TEST_CASE("negative initial data names the species") {
  auto doc = minimal();
  doc["initial"][2]["value"] = -0.5;
  const auto issues = issues_of(doc);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0] == "initial[2].value: must be nonnegative (species 3)");
}

TEST_CASE("every problem is reported at once") {
  auto doc = minimal();
  doc["diffusion"] = {1.0, -1.0, 1.0};
  doc["grid"] = {{"n_cells", 1}, {"cells", 4}};
  doc["solver"] = {{"dt", 2.0}, {"t_end", 1.0}};
  doc["output"] = {{"csv", "x"}, {"report", "x"}};
  const auto issues = issues_of(doc);
  CHECK(has_issue(issues, "diffusion[1]: must be positive"));
  CHECK(has_issue(issues, "diffusion: expected 4 coefficients"));
  CHECK(has_issue(issues, "grid.cells: unknown key"));
  CHECK(has_issue(issues, "grid.n_cells: must be >= 2"));
  CHECK(has_issue(issues, "solver.dt: must not exceed solver.t_end"));
  CHECK(has_issue(issues, "output: csv and report paths must differ"));
}

TEST_CASE("model sections") {
  auto doc = minimal();
  doc["model"] = {{"type", "skew_lv"}, {"A", {{0.0, 1.0}, {1.0, 0.0}}}, {"tau", {1.0, 1.0}}};
  doc["diffusion"] = {1.0, 1.0};
  doc["initial"] = {{{"type", "constant"}, {"value", 1.0}}, {{"type", "constant"}, {"value", 1.0}}};
  CHECK(has_issue(issues_of(doc), "model.A: is not skew-symmetric"));
  doc["model"]["A"] = {{0.0, 1.0}, {-1.0, 0.0}};
  CHECK(std::holds_alternative<SkewLVParams>(parse_config(doc).model));

  doc["model"] = ordered_json::parse(R"({"type": "custom", "species": 2, "K0": 0, "K1": 0,
      "K": 1, "epsilon": 0,
      "terms": [[{"coef": -1, "powers": [1, 0]}], [{"coef": 1, "powers": [1]}]]})");
  CHECK(has_issue(issues_of(doc), "model.terms[1][0].powers: must list one exponent per species"));
  doc["model"]["terms"][1][0]["powers"] = {1, 0};
  const RunConfig cfg = parse_config(doc);
  const auto& params = std::get<CustomPolynomialParams>(cfg.model);
  CHECK(params.n_species == 2);
  CHECK(params.terms[1][0].coefficient == 1.0);

  doc["model"] = {{"type", "brusselator"}};
  CHECK(has_issue(issues_of(doc), "model.type: unknown model type 'brusselator'"));
}

TEST_CASE("initial profiles on the grid") {
  const Grid1D g(4, 1.0);  // centers 0.125, 0.375, 0.625, 0.875
  InitialProfile pw;
  pw.kind = InitialProfile::Kind::piecewise;
  pw.breaks = {0.5};
  pw.values = {2.0, 3.0};
  CHECK(realize_profile(pw, g).values() == std::vector<double>{2.0, 2.0, 3.0, 3.0});

  InitialProfile bump;
  bump.kind = InitialProfile::Kind::bump;
  bump.center = 0.375;
  bump.width = 0.25;
  bump.amplitude = 2.0;
  bump.base = 0.5;
  const Field f = realize_profile(bump, g);
  CHECK(f[1] == 2.5);
  CHECK(f[2] == doctest::Approx(0.5 + 2.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(f[0] == f[2]);

  auto doc = minimal();
  doc["initial"][0] = {{"type", "piecewise"}, {"breaks", {0.5, 0.2}}, {"values", {1, 2}}};
  const auto issues = issues_of(doc);
  CHECK(has_issue(issues, "initial[0].values: must have exactly len(breaks) + 1 entries"));
  CHECK(has_issue(issues, "initial[0].breaks: must be strictly increasing"));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("load_config reports unreadable and malformed files") {
  CHECK_THROWS_AS(load_config("/nonexistent/rdsim.json"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "rdsim_test_bad.json";
  {
    std::ofstream(path) << "{ \"model\": ";
  }
  try {
    load_config(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].find("parse error") != std::string::npos);
  }
  std::filesystem::remove(path);
}
