#include "bcs/app/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string_view>

namespace bcs::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) fail(where, "unknown key \"" + key + "\"");
  }
}

double get_number(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) fail(where, std::string("\"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, std::string("\"") + key + "\" must be finite");
  return x;
}

int get_int(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(where, std::string("\"") + key + "\" must be an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    fail(where, std::string("\"") + key + "\" is out of range");
  return static_cast<int>(x);
}

template <class T, class Getter>
T get_or(const json& j, const std::string& where, const char* key, T fallback, Getter get) {
  return j.contains(key) ? static_cast<T>(get(j, where, key)) : fallback;
}

BZGeometry parse_geometry(const json& block, int d) {
  if (!block.contains("dual_basis")) return BZGeometry::canonical(d);
  const json& basis = block.at("dual_basis");
  const std::string where = "model.dual_basis";
  if (!basis.is_array() || basis.size() != static_cast<std::size_t>(d))
    fail(where, "expected " + std::to_string(d) + " vectors");
  std::vector<double> row_major(static_cast<std::size_t>(d * d));
  for (int j = 0; j < d; ++j) {
    const json& v = basis.at(static_cast<std::size_t>(j));
    if (!v.is_array() || v.size() != static_cast<std::size_t>(d))
      fail(where, "each vector needs " + std::to_string(d) + " components");
    for (int i = 0; i < d; ++i) {
      const json& x = v.at(static_cast<std::size_t>(i));
      if (!x.is_number()) fail(where, "components must be numbers");
      row_major[static_cast<std::size_t>(i * d + j)] = x.get<double>();
    }
  }
  return BZGeometry::from_basis(d, std::move(row_major));
}

SolverConfig parse_solver(const json& root) {
  SolverConfig cfg;
  if (root.contains("quadrature")) {
    const json& q = root.at("quadrature");
    const std::string where = "quadrature";
    require_object(q, where);
    allow_keys(q, where, {"points", "tol", "max_doublings"});
    if (q.contains("points")) {
      const int n = get_int(q, where, "points");
      if (n < 4) fail(where, "\"points\" must be at least 4");
      cfg.quad.base_points_per_dim = static_cast<std::size_t>(n);
    }
    cfg.quad.abs_tol = get_or(q, where, "tol", cfg.quad.abs_tol, get_number);
    cfg.quad.max_doublings = get_or(q, where, "max_doublings", cfg.quad.max_doublings, get_int);
  }
  if (root.contains("root")) {
    const json& r = root.at("root");
    const std::string where = "root";
    require_object(r, where);
    allow_keys(r, where, {"abs_tol", "max_iter", "classification_tol", "x_rel_tol"});
    cfg.root.abs_tol = get_or(r, where, "abs_tol", cfg.root.abs_tol, get_number);
    cfg.root.max_iter = get_or(r, where, "max_iter", cfg.root.max_iter, get_int);
    cfg.root.classification_tol =
        get_or(r, where, "classification_tol", cfg.root.classification_tol, get_number);
    cfg.root.x_rel_tol = get_or(r, where, "x_rel_tol", cfg.root.x_rel_tol, get_number);
  }
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    fail("solver settings", e.what());
  }
  return cfg;
}

AxisRange parse_axis(const json& j, const std::string& where) {
  require_object(j, where);
  allow_keys(j, where, {"min", "max", "count"});
  AxisRange a{get_number(j, where, "min"), get_number(j, where, "max"), get_int(j, where, "count")};
  if (a.count < 1) fail(where, "\"count\" must be positive");
  if (a.max < a.min) fail(where, "\"max\" must not be below \"min\"");
  return a;
}

}  // namespace

double AxisRange::at(int i) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

const DispersionModel& RunConfig::require_model() const {
  if (!model) throw ConfigError("config: missing \"model\" block");
  return *model;
}

Coupling RunConfig::require_coupling() const {
  if (!U) throw ConfigError("config: missing \"U\"");
  return Coupling(*U);
}

DispersionModel parse_model(const json& block) {
  const std::string where = "model";
  require_object(block, where);
  if (!block.contains("kind") || !block.at("kind").is_string()) fail(where, "missing string \"kind\"");
  const std::string kind = block.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      allow_keys(block, where, {"kind", "b", "e", "d", "dual_basis"});
      const int d = get_or(block, where, "d", 1, get_int);
      return DispersionModel(ConstantDiagonal{get_int(block, where, "b"), get_number(block, where, "e")},
                             parse_geometry(block, d));
    }
    if (kind == "multi_orbital") {
      allow_keys(block, where, {"kind", "b", "b_prime", "e_min", "e_max", "d", "dual_basis"});
      const int d = get_or(block, where, "d", 1, get_int);
      return DispersionModel(
          MultiOrbitalDiagonal{get_int(block, where, "b"), get_int(block, where, "b_prime"),
                               get_number(block, where, "e_min"), get_number(block, where, "e_max")},
          parse_geometry(block, d));
    }
    if (kind == "cosine_1d") {
      allow_keys(block, where, {"kind", "t_hop", "e_min", "dual_basis"});
      return DispersionModel(Cosine1D{get_number(block, where, "t_hop"), get_number(block, where, "e_min")},
                             parse_geometry(block, 1));
    }
    if (kind == "bump") {
      allow_keys(block, where, {"kind", "d", "b", "s", "t", "e_min", "e_max", "dual_basis"});
      const int d = get_int(block, where, "d");
      if (d < 1) fail(where, "\"d\" must be positive");
      return build_bump_dispersion(d, get_int(block, where, "b"),
                                   {get_number(block, where, "s"), get_number(block, where, "t")},
                                   get_number(block, where, "e_min"),
                                   get_number(block, where, "e_max"), parse_geometry(block, d));
    }
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  fail(where, "unknown kind \"" + kind + "\"");
}

RunConfig parse_config(const json& root) {
  require_object(root, "config");
  allow_keys(root, "config",
             {"description", "model", "U", "quadrature", "root", "gap", "tau_curve", "phase_diagram"});
  RunConfig cfg;
  if (root.contains("model")) cfg.model = parse_model(root.at("model"));
  if (root.contains("U")) {
    const double u = get_number(root, "config", "U");
    if (!(u < 0.0)) fail("config", "\"U\" must be negative");
    cfg.U = u;
  }
  cfg.solver = parse_solver(root);

  if (root.contains("gap")) {
    const json& g = root.at("gap");
    const std::string where = "gap";
    require_object(g, where);
    allow_keys(g, where, {"beta", "t", "theta"});
    const double beta = get_number(g, where, "beta");
    if (!(beta > 0.0)) fail(where, "\"beta\" must be positive");
    const bool has_t = g.contains("t");
    const bool has_theta = g.contains("theta");
    if (has_t == has_theta) fail(where, "give exactly one of \"t\" and \"theta\"");
    const double t = has_t ? get_number(g, where, "t") : beta * get_number(g, where, "theta");
    cfg.gap = GapRequest{beta, t};
  }

  if (root.contains("tau_curve")) {
    const json& c = root.at("tau_curve");
    const std::string where = "tau_curve";
    require_object(c, where);
    allow_keys(c, where, {"core_points", "decade_points", "decades", "second_derivative"});
    GridSpec& grid = cfg.tau_curve;
    grid.core_points = get_or(c, where, "core_points", grid.core_points, get_int);
    grid.decade_points = get_or(c, where, "decade_points", grid.decade_points, get_int);
    grid.decades = get_or(c, where, "decades", grid.decades, get_int);
    if (c.contains("second_derivative")) {
      if (!c.at("second_derivative").is_boolean()) fail(where, "\"second_derivative\" must be a boolean");
      grid.second_derivative = c.at("second_derivative").get<bool>();
    }
    try {
      grid.validate();
    } catch (const DomainError& e) {
      fail(where, e.what());
    }
  }

  if (root.contains("phase_diagram")) {
    const json& p = root.at("phase_diagram");
    const std::string where = "phase_diagram";
    require_object(p, where);
    allow_keys(p, where, {"beta", "t"});
    if (!p.contains("beta") || !p.contains("t")) fail(where, "needs \"beta\" and \"t\" ranges");
    PhaseDiagramRequest req{parse_axis(p.at("beta"), "phase_diagram.beta"),
                            parse_axis(p.at("t"), "phase_diagram.t")};
    if (!(req.beta.min > 0.0)) fail("phase_diagram.beta", "\"min\" must be positive");
    cfg.phase_diagram = req;
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(root);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace bcs::app
