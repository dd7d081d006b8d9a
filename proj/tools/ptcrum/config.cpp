#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ptcrum::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--" + key + ": expected a number, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_int("indices", item));
  }
  return out;
}

int parse_quasi_parity(const std::string& text) {
  const int q = to_int("qp", text);
  if (q != 1 && q != -1) throw UsageError("--qp must be +1 or -1");
  return q;
}

std::optional<ScarfTower> parse_tower(const std::string& text) {
  if (text == "+" || text == "plus" || text == "+1") return ScarfTower::Plus;
  if (text == "-" || text == "minus" || text == "-1") return ScarfTower::Minus;
  if (text == "auto" || text.empty()) return std::nullopt;
  throw UsageError("--tower must be +, - or auto");
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  throw UsageError("--format must be csv or json");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") {
    cfg.model = value;
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "eps") {
    cfg.eps = to_double(key, value);
  } else if (key == "qp") {
    cfg.qp = parse_quasi_parity(value);
  } else if (key == "lambda") {
    cfg.lambda = to_double(key, value);
  } else if (key == "mu") {
    cfg.mu = to_double(key, value);
  } else if (key == "tower") {
    cfg.tower = parse_tower(value);
  } else if (key == "indices") {
    cfg.indices = parse_indices(value);
  } else if (key == "grid-l") {
    cfg.grid_l = to_double(key, value);
  } else if (key == "grid-n") {
    cfg.grid_n = to_int(key, value);
  } else if (key == "stencil") {
    cfg.stencil = to_int(key, value);
  } else if (key == "tol-spectrum") {
    cfg.tol_spectrum = to_double(key, value);
    if (!(cfg.tol_spectrum > 0.0)) throw UsageError("--tol-spectrum must be positive");
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    cfg.format = parse_format(value);
  } else if (key == "refine") {
    cfg.refine = to_int(key, value);
    if (cfg.refine < 0) throw UsageError("--refine must be non-negative");
  } else if (key == "levels") {
    cfg.levels = to_int(key, value);
    if (*cfg.levels < 1) throw UsageError("--levels must be positive");
  } else if (key == "susy-grid-n") {
    cfg.susy_grid_n = to_int(key, value);
  } else if (key == "susy-stencil") {
    cfg.susy_stencil = to_int(key, value);
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

ModelPtr build_model(const RunConfig& cfg) {
  if (cfg.model == "pt-oscillator") return oscillator_model(cfg.alpha, cfg.eps, cfg.qp);
  if (cfg.model == "scarf2") return scarf_model(cfg.lambda, cfg.mu, cfg.tower);
  throw UsageError("--model must be pt-oscillator or scarf2, got '" + cfg.model + "'");
}

Grid build_grid(const RunConfig& cfg, const SolvableModel& model) {
  const Grid base = model.default_grid();
  return Grid{cfg.grid_l.value_or(base.half_width()), cfg.grid_n.value_or(base.points())};
}

int level_count(const RunConfig& cfg, const SolvableModel& model) {
  const int fallback = model.level_count().value_or(10);
  const int wanted = cfg.levels.value_or(fallback);
  return model.level_count() ? std::min(wanted, *model.level_count()) : wanted;
}

}  // namespace ptcrum::cli
