#include "rqt/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "rqt/errors.hpp"

namespace rqt {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double to_double(std::string_view s, int line) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    fail(line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

std::vector<double> to_list(std::string_view s, int line) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(to_double(s.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

Eigen::Vector3d to_vector(const Entry& e) {
  const auto v = to_list(e.value, e.line);
  if (v.size() != 3) fail(e.line, "expected three comma-separated components");
  return {v[0], v[1], v[2]};
}

Complex to_complex(const Entry& e) {
  const auto v = to_list(e.value, e.line);
  if (v.size() > 2) fail(e.line, "expected a complex number as re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

int to_int(const Entry& e) {
  const double v = to_double(e.value, e.line);
  if (v != static_cast<double>(static_cast<long long>(v))) fail(e.line, "expected an integer");
  return static_cast<int>(v);
}

bool to_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail(e.line, "expected true or false");
}

const std::set<std::string> kDetectorScalars = {"coupling_time", "coupling_strength",
                                                "smearing_width", "gap", "monopole_phase"};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {"input.alpha",      "input.beta",     "scheme",
                               "epsilon",          "tolerance",      "seed",
                               "format",           "output",         "target_e_ab",
                               "sweep.parameter",  "sweep.start",    "sweep.stop",
                               "sweep.steps",      "one_shot.grid",  "oracle.draws",
                               "noiseless_side_channel", "detector_b.initial_bloch"};
    for (const char* d : {"detector_a.", "detector_b."}) {
      k.insert(std::string(d) + "position");
      for (const auto& s : kDetectorScalars) k.insert(d + s);
    }
    return k;
  }();
  return keys;
}

const char* kRequired[] = {"detector_a.position",       "detector_a.coupling_time",
                           "detector_a.coupling_strength", "detector_a.smearing_width",
                           "detector_b.position",       "detector_b.coupling_time",
                           "detector_b.coupling_strength", "detector_b.smearing_width",
                           "input.alpha",               "input.beta"};

}  // namespace

bool is_sweepable(const std::string& key) {
  for (const char* d : {"detector_a.", "detector_b."}) {
    const std::string prefix(d);
    if (key.rfind(prefix, 0) != 0) continue;
    const std::string rest = key.substr(prefix.size());
    if (kDetectorScalars.count(rest)) return true;
    if (rest == "position.x" || rest == "position.y" || rest == "position.z") return true;
  }
  return false;
}

void set_parameter(TeleportConfig& cfg, const std::string& key, double value) {
  if (!is_sweepable(key)) throw ConfigError("unknown sweep parameter '" + key + "'");
  DetectorConfig& d = key[9] == 'a' ? cfg.a : cfg.b;
  const std::string rest = key.substr(11);
  if (rest == "coupling_time") d.coupling_time = value;
  else if (rest == "coupling_strength") d.coupling_strength = value;
  else if (rest == "smearing_width") d.smearing_width = value;
  else if (rest == "gap") d.gap = value;
  else if (rest == "monopole_phase") d.monopole_phase = value;
  else d.position(rest.back() - 'x') = value;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) fail(line_no, "expected 'key = value'");
    if (!known_keys().count(key)) fail(line_no, "unknown key '" + key + "'");
    if (entries.count(key))
      fail(line_no, "duplicate key '" + key + "' (first set on line " +
                        std::to_string(entries[key].line) + ")");
    entries[key] = {value, line_no};
  }
  for (const char* k : kRequired)
    if (!entries.count(k)) throw ConfigError(std::string("missing required key '") + k + "'");

  RunConfig cfg;
  auto has = [&](const std::string& k) { return entries.count(k) > 0; };
  auto num = [&](const std::string& k) { return to_double(entries[k].value, entries[k].line); };

  for (const char* d : {"detector_a", "detector_b"}) {
    DetectorConfig& det = d[9] == 'a' ? cfg.teleport.a : cfg.teleport.b;
    const std::string p(d);
    det.label = d[9] == 'a' ? DetectorLabel::A : DetectorLabel::B;
    det.position = to_vector(entries[p + ".position"]);
    det.coupling_time = num(p + ".coupling_time");
    det.coupling_strength = num(p + ".coupling_strength");
    det.smearing_width = num(p + ".smearing_width");
    if (has(p + ".gap")) det.gap = num(p + ".gap");
    if (has(p + ".monopole_phase")) det.monopole_phase = num(p + ".monopole_phase");
    try {
      det.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p + ": " + e.what());
    }
  }

  const Complex alpha = to_complex(entries["input.alpha"]);
  const Complex beta = to_complex(entries["input.beta"]);
  try {
    cfg.teleport.input = PureQubit(alpha, beta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("line " + std::to_string(entries["input.beta"].line) + ": " + e.what());
  }
  if (has("detector_b.initial_bloch")) {
    const Entry& e = entries["detector_b.initial_bloch"];
    try {
      cfg.teleport.rho_b0 = DensityOperator::from_bloch(to_vector(e));
    } catch (const std::invalid_argument& ex) {
      fail(e.line, ex.what());
    }
  }
  if (has("scheme")) {
    const Entry& e = entries["scheme"];
    if (e.value == "two_binary_uses") cfg.teleport.scheme = Scheme::TwoBinaryUses;
    else if (e.value == "variant_four_message") cfg.teleport.scheme = Scheme::VariantFourMessage;
    else fail(e.line, "scheme must be two_binary_uses or variant_four_message");
  }
  if (has("epsilon")) {
    cfg.epsilon = num("epsilon");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
      fail(entries["epsilon"].line, "epsilon must lie in (0, 1)");
  }
  if (has("tolerance")) {
    cfg.tolerance = num("tolerance");
    if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-6))
      fail(entries["tolerance"].line, "tolerance must lie in (0, 1e-6]");
  }
  cfg.teleport.quadrature.abs_tol = cfg.tolerance;
  if (has("seed")) {
    const int s = to_int(entries["seed"]);
    if (s < 0) fail(entries["seed"].line, "seed must be non-negative");
    cfg.teleport.seed = static_cast<std::uint64_t>(s);
  }
  if (has("format")) {
    const Entry& e = entries["format"];
    if (e.value == "csv") cfg.format = OutputFormat::Csv;
    else if (e.value == "json") cfg.format = OutputFormat::Json;
    else fail(e.line, "format must be csv or json");
  }
  if (has("output")) cfg.output = entries["output"].value;
  if (has("target_e_ab")) cfg.target_e_ab = num("target_e_ab");
  if (has("noiseless_side_channel"))
    cfg.teleport.noiseless_side_channel = to_bool(entries["noiseless_side_channel"]);
  if (has("one_shot.grid")) {
    cfg.one_shot_grid = to_int(entries["one_shot.grid"]);
    if (cfg.one_shot_grid < 1) fail(entries["one_shot.grid"].line, "grid must be positive");
  }
  if (has("oracle.draws")) {
    cfg.oracle_draws = to_int(entries["oracle.draws"]);
    if (cfg.oracle_draws < 1) fail(entries["oracle.draws"].line, "draws must be positive");
  }

  const bool any_sweep = has("sweep.parameter") || has("sweep.start") || has("sweep.stop") ||
                         has("sweep.steps");
  if (any_sweep) {
    for (const char* k : {"sweep.parameter", "sweep.start", "sweep.stop", "sweep.steps"})
      if (!has(k)) throw ConfigError(std::string("missing required key '") + k + "'");
    SweepAxis axis;
    axis.parameter = entries["sweep.parameter"].value;
    if (!is_sweepable(axis.parameter))
      fail(entries["sweep.parameter"].line, "unknown sweep parameter '" + axis.parameter + "'");
    axis.start = num("sweep.start");
    axis.stop = num("sweep.stop");
    axis.steps = to_int(entries["sweep.steps"]);
    if (axis.steps < 1) fail(entries["sweep.steps"].line, "steps must be at least 1");
    cfg.sweep = axis;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace rqt
