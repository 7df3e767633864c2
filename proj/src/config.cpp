#include "rescot/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rescot/errors.hpp"

namespace rescot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::vector<double> doubles(const json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) fail(where, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Box parse_box(const json& value, const std::string& where) {
  check_keys(value, {"lo", "hi"}, where);
  Box box(doubles(need(value, "lo", where), where + ".lo"),
          doubles(need(value, "hi", where), where + ".hi"));
  box.validate(0, where);
  return box;
}

json box_to_json(const Box& box) {
  return json{{"lo", box.lo}, {"hi", box.hi}};
}

std::pair<std::size_t, std::size_t> line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_of(text, e.byte ? e.byte - 1 : 0);
    throw ConfigError("config: parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }

  check_keys(doc, {"name", "system", "grid", "spec", "run"}, "$");
  ScenarioConfig config;
  if (doc.contains("name")) config.name = doc.at("name").get<std::string>();

  {
    const json& sys = need(doc, "system", "$");
    check_keys(sys, {"dynamics", "tau", "w_normal", "w_high", "d"}, "system");
    config.dynamics = need(sys, "dynamics", "system").get<std::string>();
    config.tau = need(sys, "tau", "system").get<double>();
    if (!(config.tau > 0.0)) fail("system.tau", "must be positive");
    config.w_normal = parse_box(need(sys, "w_normal", "system"), "system.w_normal");
    if (sys.contains("d") == sys.contains("w_high"))
      fail("system", "give exactly one of w_high or d");
    if (sys.contains("d")) {
      config.d = sys.at("d").get<double>();
      apply_spike_magnitude(config, *config.d);
    } else {
      config.w_high = parse_box(sys.at("w_high"), "system.w_high");
    }
  }

  {
    const json& grid = need(doc, "grid", "$");
    check_keys(grid, {"state_lo", "state_hi", "eta", "periodic", "inputs"}, "grid");
    config.grid.state_lo = doubles(need(grid, "state_lo", "grid"), "grid.state_lo");
    config.grid.state_hi = doubles(need(grid, "state_hi", "grid"), "grid.state_hi");
    config.grid.eta = doubles(need(grid, "eta", "grid"), "grid.eta");
    const json& periodic = need(grid, "periodic", "grid");
    if (!periodic.is_array()) fail("grid.periodic", "expected an array of booleans");
    for (const auto& p : periodic) {
      if (!p.is_boolean()) fail("grid.periodic", "expected an array of booleans");
      config.grid.periodic.push_back(p.get<bool>() ? 1 : 0);
    }
    const json& inputs = need(grid, "inputs", "grid");
    if (!inputs.is_array() || inputs.empty()) fail("grid.inputs", "expected a non-empty array");
    for (const auto& u : inputs) config.grid.input_values.push_back(doubles(u, "grid.inputs"));
    config.grid.validate();
  }

  {
    const json& spec = need(doc, "spec", "$");
    check_keys(spec, {"regions", "default_color", "obstacles"}, "spec");
    config.cmap.default_color = need(spec, "default_color", "spec").get<int>();
    if (spec.contains("regions")) {
      for (const auto& region : spec.at("regions")) {
        check_keys(region, {"boxes", "color"}, "spec.regions[]");
        ColorRegion r;
        r.color = need(region, "color", "spec.regions[]").get<int>();
        for (const auto& b : need(region, "boxes", "spec.regions[]"))
          r.boxes.push_back(parse_box(b, "spec.regions[].boxes[]"));
        config.cmap.regions.push_back(std::move(r));
      }
    }
    if (spec.contains("obstacles"))
      for (const auto& b : spec.at("obstacles"))
        config.cmap.obstacle_boxes.push_back(parse_box(b, "spec.obstacles[]"));
  }

  {
    const json& run = need(doc, "run", "$");
    check_keys(run, {"mode", "seed", "horizon", "x0", "probes"}, "run");
    if (run.contains("mode")) config.run.mode = parse_mode(run.at("mode").get<std::string>());
    if (run.contains("seed")) config.run.seed = run.at("seed").get<std::uint64_t>();
    if (run.contains("horizon")) config.run.horizon = run.at("horizon").get<std::uint64_t>();
    if (run.contains("x0")) config.run.x0 = doubles(run.at("x0"), "run.x0");
    if (run.contains("probes")) {
      for (const auto& probe : run.at("probes")) {
        check_keys(probe, {"name", "x"}, "run.probes[]");
        config.run.probes.push_back(
            {need(probe, "name", "run.probes[]").get<std::string>(),
             doubles(need(probe, "x", "run.probes[]"), "run.probes[].x")});
      }
    }
  }

  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_to_json(const ScenarioConfig& config) {
  json doc;
  if (!config.name.empty()) doc["name"] = config.name;
  json sys{{"dynamics", config.dynamics}, {"tau", config.tau},
           {"w_normal", box_to_json(config.w_normal)}};
  if (config.d)
    sys["d"] = *config.d;
  else
    sys["w_high"] = box_to_json(config.w_high);
  doc["system"] = std::move(sys);

  std::vector<bool> periodic;
  for (auto p : config.grid.periodic) periodic.push_back(p != 0);
  doc["grid"] = json{{"state_lo", config.grid.state_lo},
                     {"state_hi", config.grid.state_hi},
                     {"eta", config.grid.eta},
                     {"periodic", periodic},
                     {"inputs", config.grid.input_values}};

  json regions = json::array();
  for (const auto& region : config.cmap.regions) {
    json boxes = json::array();
    for (const auto& b : region.boxes) boxes.push_back(box_to_json(b));
    regions.push_back(json{{"boxes", std::move(boxes)}, {"color", region.color}});
  }
  json obstacles = json::array();
  for (const auto& b : config.cmap.obstacle_boxes) obstacles.push_back(box_to_json(b));
  doc["spec"] = json{{"regions", std::move(regions)},
                     {"default_color", config.cmap.default_color},
                     {"obstacles", std::move(obstacles)}};

  json run{{"mode", to_string(config.run.mode)},
           {"seed", config.run.seed},
           {"horizon", config.run.horizon}};
  if (!config.run.x0.empty()) run["x0"] = config.run.x0;
  json probes = json::array();
  for (const auto& probe : config.run.probes)
    probes.push_back(json{{"name", probe.name}, {"x", probe.x}});
  run["probes"] = std::move(probes);
  doc["run"] = std::move(run);

  return doc.dump(2) + "\n";
}

void apply_spike_magnitude(ScenarioConfig& config, double d) {
  if (!(d > 0.0)) throw ConfigError("config: spike magnitude d must be positive");
  config.d = d;
  const std::size_t n = config.w_normal.dim();
  Box high;
  high.lo.resize(n);
  high.hi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (config.w_normal.lo[i] == config.w_normal.hi[i]) {
      high.lo[i] = config.w_normal.lo[i];
      high.hi[i] = config.w_normal.hi[i];
    } else {
      high.lo[i] = -d;
      high.hi[i] = d;
    }
  }
  config.w_high = std::move(high);
}

SampledSystem make_system(const ScenarioConfig& config) {
  SampledSystem sys;
  sys.tau = config.tau;
  sys.w_normal = config.w_normal;
  sys.w_high = config.w_high;

  if (config.dynamics == "unicycle") {
    sys.state_dim = 3;
    sys.input_dim = 2;
    sys.vector_field = [](std::span<const double> x, std::span<const double> u,
                          std::span<const double> w, std::span<double> dxdt) {
      dxdt[0] = u[0] * std::cos(x[2]) + w[0];
      dxdt[1] = u[0] * std::sin(x[2]) + w[1];
      dxdt[2] = u[1] + w[2];
    };
    sys.growth_bound = [](std::span<const double> r, std::span<const double> u,
                          std::span<const double> wr, std::span<double> drdt) {
      drdt[0] = std::fabs(u[0]) * r[2] + wr[0];
      drdt[1] = std::fabs(u[0]) * r[2] + wr[1];
      drdt[2] = wr[2];
    };
  } else if (config.dynamics == "integrator") {
    const std::size_t n = config.grid.dim();
    sys.state_dim = n;
    sys.input_dim = n;
    sys.vector_field = [n](std::span<const double> /*x*/, std::span<const double> u,
                           std::span<const double> w, std::span<double> dxdt) {
      for (std::size_t i = 0; i < n; ++i) dxdt[i] = u[i] + w[i];
    };
    sys.growth_bound = [n](std::span<const double> /*r*/, std::span<const double> /*u*/,
                           std::span<const double> wr, std::span<double> drdt) {
      for (std::size_t i = 0; i < n; ++i) drdt[i] = wr[i];
    };
  } else {
    throw ConfigError("config: unknown dynamics '" + config.dynamics +
                      "' (registered: unicycle, integrator)");
  }

  if (config.grid.dim() != sys.state_dim)
    throw ConfigError("config: grid dimension does not match the dynamics state dimension");
  for (const auto& u : config.grid.input_values)
    if (u.size() != sys.input_dim)
      throw ConfigError("config: input dimension does not match the dynamics input dimension");
  return sys;
}

}  // namespace rescot
