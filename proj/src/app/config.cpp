#include "maxent/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "maxent/errors.hpp"

namespace maxent::app {

int RunConfig::effective_resolution(int dim) const {
  if (resolution > 0) return resolution;
  return dim == 1 ? 1024 : 128;
}

int RunConfig::effective_sep_n(int dim) const {
  if (sep_n > 0) return sep_n;
  return dim == 1 ? 6 : 3;
}

int RunConfig::effective_sep_candidates(int dim) const {
  if (sep_candidates > 0) return sep_candidates;
  return dim == 1 ? 10000 : 40000;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "map",        "a",           "b",          "eps",          "N",
      "S",          "n",           "tol",        "max-iters",    "mass-floor",
      "delta0",     "eps-list",    "seeds",      "out",          "seed",
      "grid-n",     "lipschitz",   "force",      "all-starts",   "x0",
      "c",          "base-points", "bk-n-max",   "sep-n",        "sep-eps",
      "sep-candidates", "mixing-max-iter", "exponent-samples", "exponent-length",
      "measure-file"};
  return keys;
}

bool is_flag_key(const std::string& key) { return key == "force" || key == "all-starts"; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

int to_int32(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < -(1LL << 31) || x >= (1LL << 31)) throw ConfigError("value out of range for '" + key + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v.empty() || v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean value for '" + key + "': " + v);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = normalize_key(raw_key);
  if (key == "map") cfg.map.name = value;
  else if (key == "a") cfg.map.a = to_int32(key, value);
  else if (key == "b") cfg.map.b = to_int32(key, value);
  else if (key == "eps") cfg.map.eps = to_double(key, value);
  else if (key == "N") cfg.resolution = to_int32(key, value);
  else if (key == "S") cfg.samples = to_int32(key, value);
  else if (key == "n") cfg.orbit_length = to_int32(key, value);
  else if (key == "tol") cfg.tol_iter = to_double(key, value);
  else if (key == "max-iters") cfg.max_iters = to_int32(key, value);
  else if (key == "mass-floor") cfg.mass_floor = to_double(key, value);
  else if (key == "delta0") cfg.delta0 = to_double(key, value);
  else if (key == "eps-list") cfg.eps_list = to_list(key, value);
  else if (key == "seeds") cfg.seeds = to_int32(key, value);
  else if (key == "out") cfg.out_dir = value;
  else if (key == "seed") {
    const long long s = to_int(key, value);
    if (s < 0) throw ConfigError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  else if (key == "grid-n") cfg.grid_n = to_int32(key, value);
  else if (key == "lipschitz") cfg.lipschitz = to_double(key, value);
  else if (key == "force") cfg.force = to_bool(key, value);
  else if (key == "all-starts") cfg.all_starts = to_bool(key, value);
  else if (key == "x0") cfg.x0 = to_list(key, value);
  else if (key == "c") cfg.c = to_double(key, value);
  else if (key == "base-points") cfg.base_points = to_int32(key, value);
  else if (key == "bk-n-max") cfg.bk_n_max = to_int32(key, value);
  else if (key == "sep-n") cfg.sep_n = to_int32(key, value);
  else if (key == "sep-eps") cfg.sep_eps = to_double(key, value);
  else if (key == "sep-candidates") cfg.sep_candidates = to_int32(key, value);
  else if (key == "mixing-max-iter") cfg.mixing_max_iter = to_int32(key, value);
  else if (key == "exponent-samples") cfg.exponent_samples = to_int32(key, value);
  else if (key == "exponent-length") cfg.exponent_length = to_int32(key, value);
  else if (key == "measure-file") cfg.measure_file = value;
  else throw ConfigError("unknown configuration key '" + raw_key + "'");
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(c.resolution == 0 || (c.resolution >= 2 && c.resolution <= 65536), "N must be in [2, 65536]");
  require(c.samples >= 1 && c.samples <= 4096, "S must be in [1, 4096]");
  require(c.orbit_length >= 1 && c.orbit_length <= 100000000, "n must be in [1, 1e8]");
  require(c.tol_iter > 0.0, "tol must be positive");
  require(c.max_iters >= 0, "max-iters must be nonnegative");
  require(c.mass_floor < 0.0 || c.mass_floor > 0.0, "mass-floor must be positive (or negative for default)");
  require(c.delta0 > 0.0, "delta0 must be positive");
  for (double e : c.eps_list) require(e > 0.0, "eps-list entries must be positive");
  require(c.seeds >= 2, "seeds must be >= 2");
  require(c.grid_n >= 2, "grid-n must be >= 2");
  require(c.lipschitz >= 0.0, "lipschitz must be nonnegative");
  require(!c.c || *c.c > 0.0, "c must be positive");
  require(c.base_points >= 1, "base-points must be >= 1");
  require(c.bk_n_max >= 1, "bk-n-max must be >= 1");
  require(c.sep_n >= 0 && c.sep_eps > 0.0 && c.sep_candidates >= 0, "bad separated-set settings");
  require(c.mixing_max_iter >= 1, "mixing-max-iter must be >= 1");
  require(c.exponent_samples >= 2 && c.exponent_length >= 1, "bad exponent settings");
  require(!c.out_dir.empty(), "out must not be empty");
}

std::string canonical_form(const RunConfig& c) {
  std::ostringstream os;
  os << "map=" << c.map.name << "\na=" << c.map.a << "\nb=" << c.map.b << "\neps=" << fmt(c.map.eps)
     << "\nN=" << c.resolution << "\nS=" << c.samples << "\nn=" << c.orbit_length
     << "\ntol=" << fmt(c.tol_iter) << "\nmax-iters=" << c.max_iters
     << "\nmass-floor=" << fmt(c.mass_floor) << "\ndelta0=" << fmt(c.delta0)
     << "\neps-list=" << fmt_list(c.eps_list) << "\nseeds=" << c.seeds << "\nseed=" << c.seed
     << "\ngrid-n=" << c.grid_n << "\nlipschitz=" << fmt(c.lipschitz)
     << "\nforce=" << c.force << "\nall-starts=" << c.all_starts
     << "\nx0=" << (c.x0 ? fmt_list(*c.x0) : "") << "\nc=" << (c.c ? fmt(*c.c) : "")
     << "\nbase-points=" << c.base_points << "\nbk-n-max=" << c.bk_n_max << "\nsep-n=" << c.sep_n
     << "\nsep-eps=" << fmt(c.sep_eps) << "\nsep-candidates=" << c.sep_candidates
     << "\nmixing-max-iter=" << c.mixing_max_iter << "\nexponent-samples=" << c.exponent_samples
     << "\nexponent-length=" << c.exponent_length << "\nmeasure-file=" << c.measure_file << '\n';
  return os.str();
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_form(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace maxent::app
