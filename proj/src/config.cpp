#include "thiim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace thiim {

GridDims parse_grid(const std::string& text) {
  int n[3] = {0, 0, 0};
  char sep = 0;
  std::istringstream is(text);
  if (!(is >> n[0])) throw ConfigError("bad grid spec: " + text);
  if (is >> sep) {
    if (sep != 'x' || !(is >> n[1] >> sep >> n[2]) || sep != 'x')
      throw ConfigError("bad grid spec: " + text);
  } else {
    n[1] = n[2] = n[0];
  }
  return GridDims(n[0], n[1], n[2]);
}

ThreadGroupShape parse_shape(const std::string& text) {
  ThreadGroupShape s;
  char sep1 = 0, sep2 = 0;
  std::istringstream is(text);
  if (!(is >> s.tgz >> sep1 >> s.tgx >> sep2 >> s.tgc) || sep1 != 'x' || sep2 != 'x')
    throw ConfigError("bad shape spec (want tgz x tgx x tgc): " + text);
  return s;
}

void BenchConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "grid") grid = parse_grid(value);
    else if (key == "steps") steps = std::stoi(value);
    else if (key == "engine") engine = value;
    else if (key == "dw") dw = std::stoi(value);
    else if (key == "bz") bz = std::stoi(value);
    else if (key == "shape") shape = parse_shape(value);
    else if (key == "threads") threads = std::stoi(value);
    else if (key == "block_y") block_y = std::stoi(value);
    else if (key == "block_x") block_x = std::stoi(value);
    else if (key == "cache_bytes") profile.cache_bytes = std::stoull(value);
    else if (key == "usable_fraction") profile.usable_fraction = std::stod(value);
    else if (key == "bandwidth_gbs") profile.bandwidth_gbs = std::stod(value);
    else if (key == "omega") scheme.omega = std::stod(value);
    else if (key == "tau") scheme.tau = std::stod(value);
    else if (key == "delta") scheme.delta = std::stod(value);
    else if (key == "seed") seed = unsigned(std::stoul(value));
    else if (key == "report_dir") report_dir = value;
    else throw ConfigError("unknown config key: " + key);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + key + ": " + value);
  }
}

BenchConfig BenchConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  BenchConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string BenchConfig::serialize() const {
  std::ostringstream os;
  os << "grid = " << grid.nx << 'x' << grid.ny << 'x' << grid.nz << '\n'
     << "steps = " << steps << '\n'
     << "engine = " << engine << '\n'
     << "dw = " << dw << '\n'
     << "bz = " << bz << '\n'
     << "shape = " << shape.tgz << 'x' << shape.tgx << 'x' << shape.tgc << '\n'
     << "threads = " << threads << '\n'
     << "block_y = " << block_y << '\n'
     << "block_x = " << block_x << '\n'
     << "cache_bytes = " << profile.cache_bytes << '\n'
     << "usable_fraction = " << profile.usable_fraction << '\n'
     << "bandwidth_gbs = " << profile.bandwidth_gbs << '\n'
     << "omega = " << scheme.omega << '\n'
     << "tau = " << scheme.tau << '\n'
     << "delta = " << scheme.delta << '\n'
     << "seed = " << seed << '\n'
     << "report_dir = " << report_dir << '\n';
  return os.str();
}

void BenchConfig::apply_env_overrides() {
  if (const char* t = std::getenv("THIIM_THREADS")) threads = std::atoi(t);
  if (const char* d = std::getenv("THIIM_REPORT_DIR")) report_dir = d;
}

}  // namespace thiim
