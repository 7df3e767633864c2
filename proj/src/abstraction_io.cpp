#include "rescot/abstraction_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rescot/errors.hpp"

namespace rescot {

namespace {

constexpr const char* kMagic = "rescot-abstraction v1";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_map(std::ostream& os, const char* tag, const SuccessorMap& map) {
  for (StateId q = 0; q < map.num_states(); ++q) {
    for (ActionId u = 0; u < map.num_actions(); ++u) {
      const auto succ = map.successors(q, u);
      if (succ.empty()) continue;
      os << tag << ' ' << q << ' ' << u;
      for (StateId t : succ) os << ' ' << t;
      os << '\n';
    }
  }
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ReferenceError("abstraction file: bad number '" + tok + "'");
  }
}

std::uint64_t parse_u64(const std::string& tok) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ReferenceError("abstraction file: bad integer '" + tok + "'");
  }
}

}  // namespace

void save_abstraction(std::ostream& os, const AbstractionBundle& bundle) {
  const auto& g = bundle.gamma;
  os << kMagic << '\n';
  os << "states " << g.num_states << '\n';
  os << "actions " << g.num_actions << '\n';

  os << "colors";
  for (int c : g.colors) os << ' ' << c;
  os << '\n';
  os << "obstacle";
  for (auto o : g.obstacle) os << ' ' << int(o);
  os << '\n';

  if (bundle.grid) {
    const auto& grid = *bundle.grid;
    os << "grid " << grid.dim() << '\n';
    os << "state_lo";
    for (double v : grid.state_lo) os << ' ' << fmt_double(v);
    os << '\n';
    os << "state_hi";
    for (double v : grid.state_hi) os << ' ' << fmt_double(v);
    os << '\n';
    os << "eta";
    for (double v : grid.eta) os << ' ' << fmt_double(v);
    os << '\n';
    os << "periodic";
    for (auto p : grid.periodic) os << ' ' << int(p);
    os << '\n';
    os << "inputs " << grid.input_values.size() << ' '
       << (grid.input_values.empty() ? 0 : grid.input_values.front().size()) << '\n';
    for (const auto& u : grid.input_values) {
      os << "input";
      for (double v : u) os << ' ' << fmt_double(v);
      os << '\n';
    }
  }

  write_map(os, "nor", g.normal);
  write_map(os, "dist", g.dist);
  os << "end\n";
}

void save_abstraction_file(const std::string& path, const AbstractionBundle& bundle) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ReferenceError("cannot open '" + path + "' for writing");
  save_abstraction(os, bundle);
  if (!os) throw ReferenceError("write failed for '" + path + "'");
}

AbstractionBundle load_abstraction(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic)
    throw ReferenceError("abstraction file: bad or unsupported header (expected '" +
                         std::string(kMagic) + "')");

  AbstractionBundle bundle;
  auto& g = bundle.gamma;
  bool have_states = false, have_actions = false, ended = false;
  std::vector<std::vector<StateId>> nor_rows, dist_rows;

  auto require_shape = [&]() {
    if (!have_states || !have_actions)
      throw ReferenceError("abstraction file: states/actions must precede transitions");
  };

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto tok = tokenize(line);
    const std::string& key = tok[0];
    if (key == "states") {
      g.num_states = static_cast<StateId>(parse_u64(tok.at(1)));
      have_states = true;
    } else if (key == "actions") {
      g.num_actions = static_cast<ActionId>(parse_u64(tok.at(1)));
      have_actions = true;
      require_shape();
      nor_rows.assign(static_cast<std::size_t>(g.num_states) * g.num_actions, {});
      dist_rows.assign(static_cast<std::size_t>(g.num_states) * g.num_actions, {});
    } else if (key == "colors") {
      require_shape();
      if (tok.size() != g.num_states + 1)
        throw ReferenceError("abstraction file: color count mismatch");
      for (StateId q = 0; q < g.num_states; ++q)
        g.colors.push_back(static_cast<int>(parse_u64(tok[q + 1])));
    } else if (key == "obstacle") {
      require_shape();
      if (tok.size() != g.num_states + 1)
        throw ReferenceError("abstraction file: obstacle count mismatch");
      for (StateId q = 0; q < g.num_states; ++q)
        g.obstacle.push_back(static_cast<std::uint8_t>(parse_u64(tok[q + 1])));
    } else if (key == "grid") {
      const std::size_t n = parse_u64(tok.at(1));
      GridParams grid;
      auto read_doubles = [&](const char* tag) {
        if (!std::getline(is, line)) throw ReferenceError("abstraction file: truncated grid block");
        const auto t = tokenize(line);
        if (t.empty() || t[0] != tag || t.size() != n + 1)
          throw ReferenceError(std::string("abstraction file: expected ") + tag + " line");
        std::vector<double> out;
        for (std::size_t i = 1; i < t.size(); ++i) out.push_back(parse_double(t[i]));
        return out;
      };
      grid.state_lo = read_doubles("state_lo");
      grid.state_hi = read_doubles("state_hi");
      grid.eta = read_doubles("eta");
      {
        if (!std::getline(is, line)) throw ReferenceError("abstraction file: truncated grid block");
        const auto t = tokenize(line);
        if (t.empty() || t[0] != "periodic" || t.size() != n + 1)
          throw ReferenceError("abstraction file: expected periodic line");
        for (std::size_t i = 1; i < t.size(); ++i)
          grid.periodic.push_back(static_cast<std::uint8_t>(parse_u64(t[i])));
      }
      {
        if (!std::getline(is, line)) throw ReferenceError("abstraction file: truncated grid block");
        const auto t = tokenize(line);
        if (t.size() != 3 || t[0] != "inputs")
          throw ReferenceError("abstraction file: expected inputs line");
        const std::size_t count = parse_u64(t[1]);
        const std::size_t m = parse_u64(t[2]);
        for (std::size_t i = 0; i < count; ++i) {
          if (!std::getline(is, line))
            throw ReferenceError("abstraction file: truncated input list");
          const auto iv = tokenize(line);
          if (iv.size() != m + 1 || iv[0] != "input")
            throw ReferenceError("abstraction file: expected input line");
          std::vector<double> u;
          for (std::size_t d = 1; d < iv.size(); ++d) u.push_back(parse_double(iv[d]));
          grid.input_values.push_back(std::move(u));
        }
      }
      bundle.grid = std::move(grid);
    } else if (key == "nor" || key == "dist") {
      require_shape();
      if (tok.size() < 4) throw ReferenceError("abstraction file: malformed transition line");
      const auto q = static_cast<StateId>(parse_u64(tok[1]));
      const auto u = static_cast<ActionId>(parse_u64(tok[2]));
      if (q >= g.num_states || u >= g.num_actions)
        throw ReferenceError("abstraction file: transition indices out of range");
      auto& row = (key == "nor" ? nor_rows : dist_rows)[static_cast<std::size_t>(q) * g.num_actions + u];
      for (std::size_t i = 3; i < tok.size(); ++i) {
        const auto t = static_cast<StateId>(parse_u64(tok[i]));
        if (t >= g.num_states)
          throw ReferenceError("abstraction file: successor id out of range");
        row.push_back(t);
      }
    } else if (key == "end") {
      ended = true;
      break;
    } else {
      throw ReferenceError("abstraction file: unknown directive '" + key + "'");
    }
  }
  if (!ended) throw ReferenceError("abstraction file: missing end marker");
  require_shape();
  if (g.colors.size() != g.num_states)
    throw ReferenceError("abstraction file: colors line missing");
  if (g.obstacle.empty()) g.obstacle.assign(g.num_states, 0);
  g.normal = SuccessorMap::from_rows(g.num_states, g.num_actions, std::move(nor_rows));
  g.dist = SuccessorMap::from_rows(g.num_states, g.num_actions, std::move(dist_rows));
  try {
    g.validate();
  } catch (const InternalError& e) {
    throw ReferenceError(std::string("abstraction file: ") + e.what());
  }
  return bundle;
}

AbstractionBundle load_abstraction_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ReferenceError("cannot open abstraction file '" + path + "'");
  return load_abstraction(is);
}

}  // namespace rescot
