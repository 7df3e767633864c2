#include "rescot/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rescot/errors.hpp"

namespace rescot {

namespace {

constexpr const char* kControllerMagic = "rescot-controller v1";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ReferenceError("cannot open '" + path + "' for writing");
  return os;
}

}  // namespace

void save_resilience_csv(std::ostream& os, const ResilienceMap& map) {
  os << "state_id,value\n";
  for (std::size_t q = 0; q < map.size(); ++q) os << q << ',' << map[q].to_string() << '\n';
}

void save_resilience_csv_file(const std::string& path, const ResilienceMap& map) {
  auto os = open_out(path);
  save_resilience_csv(os, map);
}

ResilienceMap load_resilience_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ReferenceError("cannot open resilience file '" + path + "'");
  std::string line;
  if (!std::getline(is, line) || line != "state_id,value")
    throw ReferenceError("resilience file: bad header");
  ResilienceMap map;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ReferenceError("resilience file: malformed row");
    const auto id = std::stoull(line.substr(0, comma));
    if (id != map.size()) throw ReferenceError("resilience file: state ids must be consecutive");
    map.push_back(ResilienceValue::parse(line.substr(comma + 1)));
  }
  return map;
}

void save_histogram_csv(std::ostream& os, const ResilienceMap& map) {
  os << "value,count\n";
  for (const auto& [value, count] : resilience_histogram(map))
    os << value.to_string() << ',' << count << '\n';
}

void save_histogram_csv_file(const std::string& path, const ResilienceMap& map) {
  auto os = open_out(path);
  save_histogram_csv(os, map);
}

void save_controller(std::ostream& os, const ResilientController& rc) {
  os << kControllerMagic << '\n';
  os << "mode " << rc.mode << '\n';
  os << "switching " << rc.switching << '\n';
  os << "states " << rc.num_states << '\n';
  os << "actions " << rc.num_actions << '\n';
  os << "subs " << rc.subs.size() << '\n';
  for (std::size_t i = 0; i < rc.subs.size(); ++i) {
    os << "sub " << i << ' ' << rc.sub_names[i] << '\n';
    for (StateId q = 0; q < rc.num_states; ++q)
      if (rc.subs[i][q] >= 0) os << q << ' ' << rc.subs[i][q] << '\n';
    os << "endsub\n";
  }
  os << "omega_sub " << rc.omega_sub << '\n';
  os << "omega_plus_sub " << rc.omega_plus_sub << '\n';
  os << "selector\n";
  for (StateId q = 0; q < rc.num_states; ++q)
    if (rc.selector[q] >= 0) os << q << ' ' << rc.selector[q] << '\n';
  os << "endselector\n";
  os << "end\n";
}

void save_controller_file(const std::string& path, const ResilientController& rc) {
  auto os = open_out(path);
  save_controller(os, rc);
}

ResilientController load_controller(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kControllerMagic)
    throw ReferenceError("controller file: bad or unsupported header");

  ResilientController rc;
  auto next_line = [&]() {
    if (!std::getline(is, line)) throw ReferenceError("controller file: truncated");
    return line;
  };
  auto expect_kv = [&](const std::string& key) {
    next_line();
    std::istringstream in(line);
    std::string k, v;
    in >> k >> v;
    if (k != key) throw ReferenceError("controller file: expected '" + key + "' line");
    return v;
  };

  rc.mode = expect_kv("mode");
  rc.switching = expect_kv("switching");
  rc.num_states = static_cast<StateId>(std::stoul(expect_kv("states")));
  rc.num_actions = static_cast<ActionId>(std::stoul(expect_kv("actions")));
  const std::size_t sub_count = std::stoul(expect_kv("subs"));

  for (std::size_t i = 0; i < sub_count; ++i) {
    next_line();
    std::istringstream in(line);
    std::string key, name;
    std::size_t index = 0;
    in >> key >> index >> name;
    if (key != "sub" || index != i) throw ReferenceError("controller file: malformed sub header");
    rc.sub_names.push_back(name);
    std::vector<std::int32_t> table(rc.num_states, -1);
    for (;;) {
      next_line();
      if (line == "endsub") break;
      std::istringstream row(line);
      std::uint64_t q = 0;
      std::int64_t a = -1;
      row >> q >> a;
      if (q >= rc.num_states || a < 0 || a >= rc.num_actions)
        throw ReferenceError("controller file: sub entry out of range");
      table[q] = static_cast<std::int32_t>(a);
    }
    rc.subs.push_back(std::move(table));
  }

  rc.omega_sub = static_cast<std::int32_t>(std::stol(expect_kv("omega_sub")));
  rc.omega_plus_sub = static_cast<std::int32_t>(std::stol(expect_kv("omega_plus_sub")));

  next_line();
  if (line != "selector") throw ReferenceError("controller file: expected selector block");
  rc.selector.assign(rc.num_states, -1);
  for (;;) {
    next_line();
    if (line == "endselector") break;
    std::istringstream row(line);
    std::uint64_t q = 0;
    std::int64_t s = -1;
    row >> q >> s;
    if (q >= rc.num_states || s < 0 || static_cast<std::size_t>(s) >= rc.subs.size())
      throw ReferenceError("controller file: selector entry out of range");
    rc.selector[q] = static_cast<std::int32_t>(s);
  }
  next_line();
  if (line != "end") throw ReferenceError("controller file: missing end marker");
  return rc;
}

ResilientController load_controller_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ReferenceError("cannot open controller file '" + path + "'");
  return load_controller(is);
}

void save_trace_csv(std::ostream& os, const Trace& trace, std::size_t state_dim,
                    std::size_t input_dim) {
  os << "step";
  for (std::size_t d = 0; d < state_dim; ++d) os << ",x" << d;
  for (std::size_t d = 0; d < input_dim; ++d) os << ",u" << d;
  for (std::size_t d = 0; d < state_dim; ++d) os << ",w" << d;
  os << ",cell_id,spike,verdict\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    os << i;
    for (double v : step.x) os << ',' << fmt_double(v);
    for (double v : step.u) os << ',' << fmt_double(v);
    for (double v : step.w) os << ',' << fmt_double(v);
    os << ',' << step.cell << ',' << (step.spike ? 1 : 0) << ',' << step.verdict << '\n';
  }
}

void save_trace_csv_file(const std::string& path, const Trace& trace, std::size_t state_dim,
                         std::size_t input_dim) {
  auto os = open_out(path);
  save_trace_csv(os, trace, state_dim, input_dim);
}

}  // namespace rescot
