#include "vlasov/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace vlasov {

namespace {

const std::set<std::string> known_keys = {
    "problem", "method",      "dg_order",   "dof",        "dof_x1",          "dof_x2",    "dof_v1",
    "dof_v2",  "tau",         "t_end",      "layout",     "cache_block",     "workers",   "diag_every",
    "out_csv", "snapshot_times", "snapshot_prefix", "transform", "methods", "dofs",     "steps",
    "t_eval",  "reference_dof"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError("invalid value '" + value + "' for key '" + key + "': " + why);
}

double to_real(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || errno != 0 || !std::isfinite(value)) bad_value(key, text, "expected a number");
  return value;
}

int to_int(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || errno != 0 || value < -1000000000L || value > 1000000000L) {
    bad_value(key, text, "expected an integer");
  }
  return static_cast<int>(value);
}

int to_positive(const std::string& key, const std::string& text) {
  const int value = to_int(key, text);
  if (value < 1) bad_value(key, text, "must be positive");
  return value;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": missing key");
    if (!known_keys.count(key)) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (kv.values.count(key)) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    kv.values[key] = value;
    kv.lines[key] = number;
  }
  return kv;
}

KeyValues parse_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_key_values(in);
}

void override_key_value(KeyValues& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  if (!known_keys.count(key)) throw ConfigError("unknown key '" + key + "'");
  kv.values[key] = trim(assignment.substr(eq + 1));
  kv.lines[key] = 0;
}

Settings resolve_settings(const KeyValues& kv) {
  Settings s;
  auto has = [&](const std::string& key) { return kv.values.count(key) > 0; };
  auto get = [&](const std::string& key) { return kv.values.at(key); };

  if (has("problem")) {
    s.problem = get("problem");
    try {
      make_problem(s.problem);
    } catch (const std::invalid_argument&) {
      bad_value("problem", s.problem, "expected landau2d, landau4d or twostream4d");
    }
  }
  const ProblemSpec problem = make_problem(s.problem);
  const int dims = problem.dimension();

  const std::string method = has("method") ? get("method") : "spline";
  if (method == "spline") {
    s.method = {Method::spline, 0};
  } else if (method == "dg") {
    if (!has("dg_order")) throw ConfigError("method = dg requires dg_order");
    const int order = to_int("dg_order", get("dg_order"));
    if (order < 1 || order > dg::max_nodes) bad_value("dg_order", get("dg_order"), "expected 1..9");
    s.method = {Method::dg, order - 1};
  } else {
    bad_value("method", method, "expected spline or dg");
  }

  const int dof = has("dof") ? to_positive("dof", get("dof")) : 64;
  s.dof.assign(dims, dof);
  const char* const axis_keys[] = {"dof_x1", "dof_x2", "dof_v1", "dof_v2"};
  for (int k = 0; k < 4; ++k) {
    if (!has(axis_keys[k])) continue;
    // 1x1v grids have axes (x1, v1)
    int axis = -1;
    if (dims == 4) axis = k;
    else if (k == 0) axis = 0;
    else if (k == 2) axis = 1;
    if (axis < 0) throw ConfigError(std::string("key '") + axis_keys[k] + "' does not apply to " + s.problem);
    s.dof[axis] = to_positive(axis_keys[k], get(axis_keys[k]));
  }

  if (has("tau")) {
    s.tau = to_real("tau", get("tau"));
    if (!(s.tau > 0.0)) bad_value("tau", get("tau"), "must be positive");
  }
  if (has("t_end")) {
    s.t_end = to_real("t_end", get("t_end"));
    if (s.t_end < 0.0) bad_value("t_end", get("t_end"), "must be non-negative");
  }
  try {
    step_count(s.tau, s.t_end);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (has("layout")) {
    const std::string layout = get("layout");
    if (layout == "transpose") s.layout = LayoutStrategy::transpose;
    else if (layout == "strided") s.layout = LayoutStrategy::strided;
    else bad_value("layout", layout, "expected transpose or strided");
  }
  if (has("cache_block")) s.cache_block = to_positive("cache_block", get("cache_block"));
  if (has("workers")) s.workers = to_positive("workers", get("workers"));
  if (has("diag_every")) s.diag_every = to_positive("diag_every", get("diag_every"));
  if (has("out_csv")) s.out_csv = get("out_csv");
  if (has("snapshot_times")) {
    for (const std::string& item : split_list(get("snapshot_times"))) {
      const double t = to_real("snapshot_times", item);
      if (t < 0.0 || t > s.t_end + 1e-9 * std::max(1.0, s.t_end)) {
        bad_value("snapshot_times", item, "outside [0, t_end]");
      }
      s.snapshot_times.push_back(t);
    }
  }
  if (has("snapshot_prefix")) s.snapshot_prefix = get("snapshot_prefix");
  if (has("transform")) {
    const std::string t = get("transform");
    if (t == "fftw") s.transform = TransformBackend::fftw;
    else if (t == "direct") s.transform = TransformBackend::direct;
    else bad_value("transform", t, "expected fftw or direct");
  }

  if (has("methods")) {
    for (const std::string& item : split_list(get("methods"))) {
      try {
        s.methods.push_back(MethodChoice::parse(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("methods: ") + e.what());
      }
    }
    if (s.methods.empty()) bad_value("methods", get("methods"), "empty list");
  } else {
    s.methods.push_back(s.method);
  }
  if (has("dofs")) {
    for (const std::string& item : split_list(get("dofs"))) s.dofs.push_back(to_positive("dofs", item));
    if (s.dofs.empty()) bad_value("dofs", get("dofs"), "empty list");
  } else {
    s.dofs.push_back(dof);
  }
  if (has("steps")) {
    s.steps = to_int("steps", get("steps"));
    if (s.steps < 3) bad_value("steps", get("steps"), "need at least 3");
  }
  if (has("t_eval")) {
    for (const std::string& item : split_list(get("t_eval"))) {
      const double t = to_real("t_eval", item);
      try {
        step_count(s.tau, t);
      } catch (const std::invalid_argument& e) {
        bad_value("t_eval", item, e.what());
      }
      s.t_eval.push_back(t);
    }
  }
  if (has("reference_dof")) s.reference_dof = to_positive("reference_dof", get("reference_dof"));

  // the grid must be constructible
  try {
    make_grid(problem, s.method.method, s.method.dg_degree, s.dof);
    for (const MethodChoice& m : s.methods) {
      for (int d : s.dofs) make_grid(problem, m.method, m.dg_degree, d);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

LayoutStrategy layout_for(const Settings& settings, const MethodChoice& method) {
  if (settings.layout) return *settings.layout;
  return method.method == Method::dg ? LayoutStrategy::strided : LayoutStrategy::transpose;
}

RunConfig make_run_config(const Settings& s) {
  RunConfig config;
  config.problem = make_problem(s.problem);
  config.grid = make_grid(config.problem, s.method.method, s.method.dg_degree, s.dof);
  config.tau = s.tau;
  config.t_end = s.t_end;
  config.layout = LayoutDescriptor::canonical(config.grid, layout_for(s, s.method), s.cache_block);
  config.diag_every = s.diag_every;
  config.snapshot_times = s.snapshot_times;
  config.workers = s.workers;
  config.backend = s.transform;
  return config;
}

RunConfig make_run_config(const Settings& s, const MethodChoice& method, int dof) {
  Settings copy = s;
  copy.method = method;
  copy.dof.assign(copy.dof.size(), dof);
  return make_run_config(copy);
}

std::string describe(const Settings& s) {
  std::ostringstream out;
  auto list = [](const auto& items, auto&& fmt) {
    std::string text;
    for (std::size_t i = 0; i < items.size(); ++i) text += (i ? "," : "") + fmt(items[i]);
    return text;
  };
  auto real = [](double v) { return format_real(v); };
  auto integer = [](int v) { return std::to_string(v); };
  out << "problem = " << s.problem << "\n";
  out << "method = " << (s.method.method == Method::spline ? "spline" : "dg") << "\n";
  if (s.method.method == Method::dg) out << "dg_order = " << s.method.dg_degree + 1 << "\n";
  const char* const axis_keys[] = {"dof_x1", "dof_x2", "dof_v1", "dof_v2"};
  for (std::size_t a = 0; a < s.dof.size(); ++a) {
    const std::size_t key = s.dof.size() == 2 ? 2 * a : a;
    out << axis_keys[key] << " = " << s.dof[a] << "\n";
  }
  out << "tau = " << real(s.tau) << "\n";
  out << "t_end = " << real(s.t_end) << "\n";
  out << "layout = " << to_string(layout_for(s, s.method)) << "\n";
  out << "cache_block = " << s.cache_block << "\n";
  out << "workers = " << s.workers << "\n";
  out << "diag_every = " << s.diag_every << "\n";
  out << "out_csv = " << s.out_csv << "\n";
  if (!s.snapshot_times.empty()) out << "snapshot_times = " << list(s.snapshot_times, real) << "\n";
  out << "snapshot_prefix = " << s.snapshot_prefix << "\n";
  out << "transform = " << (s.transform == TransformBackend::fftw ? "fftw" : "direct") << "\n";
  out << "methods = " << list(s.methods, [](const MethodChoice& m) { return m.label(); }) << "\n";
  out << "dofs = " << list(s.dofs, integer) << "\n";
  out << "steps = " << s.steps << "\n";
  if (!s.t_eval.empty()) out << "t_eval = " << list(s.t_eval, real) << "\n";
  if (s.reference_dof > 0) out << "reference_dof = " << s.reference_dof << "\n";
  return out.str();
}

}  // namespace vlasov
