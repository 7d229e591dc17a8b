#include "rdsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdsim/errors.hpp"

namespace rdsim {

using nlohmann::ordered_json;

namespace {

/// Collects every validation issue instead of stopping at the first.
class Issues {
 public:
  void add(const std::string& path, const std::string& msg) { items_.push_back(path + ": " + msg); }
  bool empty() const { return items_.empty(); }
  std::vector<std::string> take() { return std::move(items_); }

 private:
  std::vector<std::string> items_;
};

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index(const std::string& base, std::size_t k) {
  return base + "[" + std::to_string(k) + "]";
}

const ordered_json* child(const ordered_json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

bool read_number(const ordered_json& obj, const char* key, const std::string& base, double& out,
                 Issues& issues, bool required = false) {
  const ordered_json* node = child(obj, key);
  if (!node) {
    if (required) issues.add(join(base, key), "is required");
    return false;
  }
  if (!node->is_number()) {
    issues.add(join(base, key), "must be a number");
    return false;
  }
  out = node->get<double>();
  if (!std::isfinite(out)) {
    issues.add(join(base, key), "must be finite");
    return false;
  }
  return true;
}

template <class Int>
bool read_integer(const ordered_json& obj, const char* key, const std::string& base, Int& out,
                  Issues& issues, bool required = false) {
  const ordered_json* node = child(obj, key);
  if (!node) {
    if (required) issues.add(join(base, key), "is required");
    return false;
  }
  if (!node->is_number_integer() || (node->is_number_integer() && node->get<long long>() < 0 &&
                                     !node->is_number_unsigned() && std::is_unsigned_v<Int>)) {
    issues.add(join(base, key), "must be a nonnegative integer");
    return false;
  }
  out = node->get<Int>();
  return true;
}

bool read_bool(const ordered_json& obj, const char* key, const std::string& base, bool& out,
               Issues& issues) {
  const ordered_json* node = child(obj, key);
  if (!node) return false;
  if (!node->is_boolean()) {
    issues.add(join(base, key), "must be true or false");
    return false;
  }
  out = node->get<bool>();
  return true;
}

bool read_number_list(const ordered_json& node, const std::string& path, std::vector<double>& out,
                      Issues& issues) {
  if (!node.is_array()) {
    issues.add(path, "must be an array of numbers");
    return false;
  }
  out.clear();
  bool ok = true;
  for (std::size_t k = 0; k < node.size(); ++k) {
    if (!node[k].is_number() || !std::isfinite(node[k].get<double>())) {
      issues.add(index(path, k), "must be a finite number");
      ok = false;
    } else {
      out.push_back(node[k].get<double>());
    }
  }
  return ok;
}

void check_allowed_keys(const ordered_json& obj, const std::string& base,
                        std::initializer_list<const char*> allowed, Issues& issues) {
  if (!obj.is_object()) return;
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      issues.add(join(base, key), "unknown key");
    }
  }
}

void parse_model(const ordered_json& doc, RunConfig& cfg, Issues& issues) {
  const ordered_json* model = child(doc, "model");
  if (!model || !model->is_object()) {
    issues.add("model", "is required and must be an object");
    return;
  }
  const ordered_json* type = child(*model, "type");
  if (!type || !type->is_string()) {
    issues.add("model.type", "is required (quadratic_reversible | skew_lv | custom)");
    return;
  }
  cfg.model_type = type->get<std::string>();
  if (cfg.model_type == "quadratic_reversible") {
    check_allowed_keys(*model, "model", {"type"}, issues);
    cfg.model = QuadraticReversibleParams{};
  } else if (cfg.model_type == "skew_lv") {
    check_allowed_keys(*model, "model", {"type", "A", "tau"}, issues);
    SkewLVParams params;
    const ordered_json* tau = child(*model, "tau");
    const ordered_json* a = child(*model, "A");
    if (!tau) issues.add("model.tau", "is required");
    else read_number_list(*tau, "model.tau", params.tau, issues);
    if (!a || !a->is_array()) {
      issues.add("model.A", "is required and must be a matrix");
    } else {
      for (std::size_t i = 0; i < a->size(); ++i) {
        std::vector<double> row;
        read_number_list((*a)[i], index("model.A", i), row, issues);
        params.a.push_back(std::move(row));
      }
      const std::size_t n = params.tau.size();
      bool square = params.a.size() == n;
      for (const auto& row : params.a) square = square && row.size() == n;
      if (!square) {
        issues.add("model.A", "must be N x N with N = len(model.tau)");
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (params.a[i][j] + params.a[j][i] != 0.0) {
              issues.add("model.A", "is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
              i = j = n;
            }
          }
        }
      }
    }
    cfg.model = std::move(params);
  } else if (cfg.model_type == "custom") {
    check_allowed_keys(*model, "model",
                       {"type", "name", "species", "terms", "K0", "K1", "K", "epsilon",
                        "conservative"},
                       issues);
    CustomPolynomialParams params;
    read_integer(*model, "species", "model", params.n_species, issues, true);
    read_number(*model, "K0", "model", params.mass_control.k0, issues, true);
    read_number(*model, "K1", "model", params.mass_control.k1, issues, true);
    read_number(*model, "K", "model", params.growth.k, issues, true);
    read_number(*model, "epsilon", "model", params.growth.epsilon, issues, true);
    read_bool(*model, "conservative", "model", params.conservative, issues);
    if (const auto* name = child(*model, "name"); name && name->is_string()) {
      params.name = name->get<std::string>();
    }
    if (params.mass_control.k0 < 0.0) issues.add("model.K0", "must be >= 0");
    if (params.growth.k < 0.0) issues.add("model.K", "must be >= 0");
    if (params.growth.epsilon < 0.0) issues.add("model.epsilon", "must be >= 0");
    const ordered_json* terms = child(*model, "terms");
    if (!terms || !terms->is_array()) {
      issues.add("model.terms", "is required: one list of monomials per species");
    } else {
      if (terms->size() != params.n_species) {
        issues.add("model.terms", "must have one entry per species");
      }
      for (std::size_t i = 0; i < terms->size(); ++i) {
        const std::string path = index("model.terms", i);
        std::vector<Monomial> list;
        if (!(*terms)[i].is_array()) {
          issues.add(path, "must be an array of monomials");
          params.terms.push_back({});
          continue;
        }
        for (std::size_t k = 0; k < (*terms)[i].size(); ++k) {
          const auto& node = (*terms)[i][k];
          const std::string mpath = index(path, k);
          Monomial m;
          read_number(node, "coef", mpath, m.coefficient, issues, true);
          const ordered_json* powers = child(node, "powers");
          if (!powers || !powers->is_array() || powers->size() != params.n_species) {
            issues.add(join(mpath, "powers"), "must list one exponent per species");
          } else {
            for (const auto& p : *powers) {
              if (!p.is_number_integer() || (!p.is_number_unsigned() && p.get<long long>() < 0)) {
                issues.add(join(mpath, "powers"), "exponents must be nonnegative integers");
                break;
              }
              m.powers.push_back(p.get<unsigned>());
            }
          }
          list.push_back(std::move(m));
        }
        params.terms.push_back(std::move(list));
      }
    }
    cfg.model = std::move(params);
  } else {
    issues.add("model.type", "unknown model type '" + cfg.model_type + "'");
  }
}

std::size_t species_count(const RunConfig& cfg) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, QuadraticReversibleParams>) return 4;
        else if constexpr (std::is_same_v<T, SkewLVParams>) return s.tau.size();
        else return s.n_species;
      },
      cfg.model);
}

void parse_initial(const ordered_json& doc, RunConfig& cfg, Issues& issues) {
  const ordered_json* init = child(doc, "initial");
  if (!init || !init->is_array()) {
    issues.add("initial", "is required: one profile per species");
    return;
  }
  for (std::size_t i = 0; i < init->size(); ++i) {
    const auto& node = (*init)[i];
    const std::string path = index("initial", i);
    InitialProfile p;
    const ordered_json* type = child(node, "type");
    const std::string kind = type && type->is_string() ? type->get<std::string>() : "";
    const std::string species = " (species " + std::to_string(i + 1) + ")";
    if (kind == "constant") {
      read_number(node, "value", path, p.value, issues, true);
      if (p.value < 0.0) issues.add(join(path, "value"), "must be nonnegative" + species);
    } else if (kind == "bump") {
      p.kind = InitialProfile::Kind::bump;
      read_number(node, "center", path, p.center, issues, true);
      read_number(node, "width", path, p.width, issues, true);
      read_number(node, "amplitude", path, p.amplitude, issues, true);
      read_number(node, "base", path, p.base, issues);
      if (!(p.width > 0.0)) issues.add(join(path, "width"), "must be positive" + species);
      if (p.amplitude < 0.0) issues.add(join(path, "amplitude"), "must be nonnegative" + species);
      if (p.base < 0.0) issues.add(join(path, "base"), "must be nonnegative" + species);
    } else if (kind == "piecewise") {
      p.kind = InitialProfile::Kind::piecewise;
      const ordered_json* breaks = child(node, "breaks");
      const ordered_json* values = child(node, "values");
      if (breaks) read_number_list(*breaks, join(path, "breaks"), p.breaks, issues);
      if (!values) issues.add(join(path, "values"), "is required");
      else read_number_list(*values, join(path, "values"), p.values, issues);
      if (p.values.size() != p.breaks.size() + 1) {
        issues.add(join(path, "values"), "must have exactly len(breaks) + 1 entries");
      }
      if (!std::is_sorted(p.breaks.begin(), p.breaks.end()) ||
          std::adjacent_find(p.breaks.begin(), p.breaks.end()) != p.breaks.end()) {
        issues.add(join(path, "breaks"), "must be strictly increasing");
      }
      for (double v : p.values) {
        if (v < 0.0) {
          issues.add(join(path, "values"), "must be nonnegative" + species);
          break;
        }
      }
    } else {
      issues.add(join(path, "type"), "must be constant | bump | piecewise");
    }
    cfg.initial.push_back(std::move(p));
  }
}

}  // namespace

Field realize_profile(const InitialProfile& p, const Grid1D& grid) {
  Field f(grid);
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double x = grid.center(j);
    switch (p.kind) {
      case InitialProfile::Kind::constant:
        f[j] = p.value;
        break;
      case InitialProfile::Kind::bump: {
        const double s = (x - p.center) / p.width;
        f[j] = p.base + p.amplitude * std::exp(-s * s);
        break;
      }
      case InitialProfile::Kind::piecewise: {
        const auto k = static_cast<std::size_t>(
            std::upper_bound(p.breaks.begin(), p.breaks.end(), x) - p.breaks.begin());
        f[j] = p.values[k];
        break;
      }
    }
  }
  return f;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const ordered_json& doc) {
  Issues issues;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigError({"<root>: config must be a JSON object"});
  check_allowed_keys(doc, "",
                     {"seed", "model", "diffusion", "grid", "initial", "solver", "diagnostics",
                      "transform", "faults", "output"},
                     issues);
  cfg.echo = doc;
  cfg.content_hash = fnv1a_hex(nlohmann::json(doc).dump());

  read_integer(doc, "seed", "", cfg.seed, issues);
  parse_model(doc, cfg, issues);

  if (const ordered_json* d = child(doc, "diffusion")) {
    read_number_list(*d, "diffusion", cfg.diffusion, issues);
  } else {
    issues.add("diffusion", "is required");
  }
  for (std::size_t i = 0; i < cfg.diffusion.size(); ++i) {
    if (!(cfg.diffusion[i] > 0.0)) issues.add(index("diffusion", i), "must be positive");
  }
  const std::size_t n_species = species_count(cfg);
  if (n_species > 0 && cfg.diffusion.size() != n_species) {
    issues.add("diffusion", "expected " + std::to_string(n_species) + " coefficients");
  }

  if (const ordered_json* grid = child(doc, "grid")) {
    check_allowed_keys(*grid, "grid", {"n_cells", "length"}, issues);
    read_integer(*grid, "n_cells", "grid", cfg.n_cells, issues);
    read_number(*grid, "length", "grid", cfg.length, issues);
  }
  if (cfg.n_cells < 2) issues.add("grid.n_cells", "must be >= 2");
  if (!(cfg.length > 0.0)) issues.add("grid.length", "must be positive");

  parse_initial(doc, cfg, issues);
  if (n_species > 0 && child(doc, "initial") && cfg.initial.size() != n_species) {
    issues.add("initial", "expected " + std::to_string(n_species) + " profiles");
  }

  if (const ordered_json* s = child(doc, "solver")) {
    check_allowed_keys(*s, "solver",
                       {"dt", "t_end", "record_every", "positivity_floor", "max_step_halvings"},
                       issues);
    read_number(*s, "dt", "solver", cfg.solver.dt, issues);
    read_number(*s, "t_end", "solver", cfg.solver.t_end, issues);
    read_integer(*s, "record_every", "solver", cfg.solver.record_every, issues);
    read_number(*s, "positivity_floor", "solver", cfg.solver.positivity_floor, issues);
    read_integer(*s, "max_step_halvings", "solver", cfg.solver.max_step_halvings, issues);
  }
  if (!(cfg.solver.dt > 0.0)) issues.add("solver.dt", "must be positive");
  if (!(cfg.solver.t_end > 0.0)) issues.add("solver.t_end", "must be positive");
  if (cfg.solver.dt > cfg.solver.t_end) issues.add("solver.dt", "must not exceed solver.t_end");
  if (cfg.solver.record_every < 1) issues.add("solver.record_every", "must be >= 1");
  if (cfg.solver.positivity_floor > 0.0) issues.add("solver.positivity_floor", "must be <= 0");

  auto& dg = cfg.diagnostics;
  const double max_d =
      cfg.diffusion.empty() ? 0.0 : *std::max_element(cfg.diffusion.begin(), cfg.diffusion.end());
  dg.d = 2.0 * max_d;
  if (const ordered_json* node = child(doc, "diagnostics")) {
    check_allowed_keys(*node, "diagnostics",
                       {"enabled", "d", "holder_gammas", "checks", "structure_samples",
                        "interpolation_family", "interpolation_delta"},
                       issues);
    read_bool(*node, "enabled", "diagnostics", dg.enabled, issues);
    dg.d_explicit = read_number(*node, "d", "diagnostics", dg.d, issues);
    if (const ordered_json* g = child(*node, "holder_gammas")) {
      read_number_list(*g, "diagnostics.holder_gammas", dg.holder_gammas, issues);
      for (double v : dg.holder_gammas) {
        if (!(v >= 0.0 && v < 1.0)) {
          issues.add("diagnostics.holder_gammas", "entries must lie in [0, 1)");
          break;
        }
      }
    }
    if (const ordered_json* checks = child(*node, "checks")) {
      check_allowed_keys(*checks, "diagnostics.checks",
                         {"structure", "mass", "auxiliary", "entropy", "rates"}, issues);
      read_bool(*checks, "structure", "diagnostics.checks", dg.check_structure, issues);
      read_bool(*checks, "mass", "diagnostics.checks", dg.check_mass, issues);
      read_bool(*checks, "auxiliary", "diagnostics.checks", dg.check_auxiliary, issues);
      read_bool(*checks, "entropy", "diagnostics.checks", dg.check_entropy, issues);
      read_bool(*checks, "rates", "diagnostics.checks", dg.check_rates, issues);
    }
    read_integer(*node, "structure_samples", "diagnostics", dg.structure_samples, issues);
    if (dg.structure_samples < 1) issues.add("diagnostics.structure_samples", "must be >= 1");
    if (const ordered_json* fam = child(*node, "interpolation_family")) {
      read_number_list(*fam, "diagnostics.interpolation_family", dg.interpolation_family, issues);
      if (!dg.interpolation_family.empty() && dg.interpolation_family.size() < 3) {
        issues.add("diagnostics.interpolation_family", "needs at least 3 amplitudes");
      }
      for (double a : dg.interpolation_family) {
        if (a < 0.0) {
          issues.add("diagnostics.interpolation_family", "amplitudes must be nonnegative");
          break;
        }
      }
    }
    read_number(*node, "interpolation_delta", "diagnostics", dg.interpolation_delta, issues);
    if (!(dg.interpolation_delta >= 0.0 && dg.interpolation_delta < 1.0)) {
      issues.add("diagnostics.interpolation_delta", "must lie in [0, 1)");
    }
  }
  if (dg.enabled && !cfg.diffusion.empty() && !(dg.d > max_d)) {
    issues.add("diagnostics.d", "must be strictly greater than max d_i = " +
                                    nlohmann::json(max_d).dump());
  }

  cfg.transform.horizon = cfg.solver.t_end;
  if (const ordered_json* t = child(doc, "transform")) {
    check_allowed_keys(*t, "transform", {"augment", "samples", "horizon"}, issues);
    read_bool(*t, "augment", "transform", cfg.transform.augment, issues);
    read_integer(*t, "samples", "transform", cfg.transform.samples, issues);
    read_number(*t, "horizon", "transform", cfg.transform.horizon, issues);
    if (cfg.transform.samples < 1) issues.add("transform.samples", "must be >= 1");
    if (cfg.transform.horizon < 0.0) issues.add("transform.horizon", "must be >= 0");
  }

  if (const ordered_json* f = child(doc, "faults")) {
    check_allowed_keys(*f, "faults", {"z_offset", "augmentation_offset"}, issues);
    read_number(*f, "z_offset", "faults", cfg.faults.z_offset, issues);
    read_number(*f, "augmentation_offset", "faults", cfg.faults.augmentation_offset, issues);
  }

  if (const ordered_json* o = child(doc, "output")) {
    check_allowed_keys(*o, "output", {"csv", "report"}, issues);
    if (const auto* csv = child(*o, "csv")) {
      if (csv->is_string()) cfg.csv_path = csv->get<std::string>();
      else issues.add("output.csv", "must be a path string");
    }
    if (const auto* rep = child(*o, "report")) {
      if (rep->is_string()) cfg.report_path = rep->get<std::string>();
      else issues.add("output.report", "must be a path string");
    }
  }
  if (cfg.csv_path == cfg.report_path) issues.add("output", "csv and report paths must differ");

  if (!issues.empty()) throw ConfigError(issues.take());
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot open config file"});
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({path.string() + ": parse error: " + e.what()});
  }
  return parse_config(doc);
}

}  // namespace rdsim
