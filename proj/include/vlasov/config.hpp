#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlasov/bench.hpp"
#include "vlasov/driver.hpp"

namespace vlasov {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw `key = value` entries; `#` starts a comment.
struct KeyValues {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
};

/// Throws ConfigError on syntax errors, duplicate keys and unknown keys.
KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);
/// Adds or replaces one `key=value` entry (command-line override).
void override_key_value(KeyValues& kv, const std::string& assignment);

struct Settings {
  std::string problem = "landau2d";
  MethodChoice method;
  std::vector<int> dof;  // per axis
  double tau = 0.1;
  double t_end = 0.0;
  std::optional<LayoutStrategy> layout;  // default depends on method
  int cache_block = 8;
  int workers = 1;
  int diag_every = 1;
  std::string out_csv;
  std::vector<double> snapshot_times;
  std::string snapshot_prefix = "snapshot";
  TransformBackend transform = TransformBackend::fftw;
  // bench and convergence
  std::vector<MethodChoice> methods;
  std::vector<int> dofs;
  int steps = 5;
  std::vector<double> t_eval;
  int reference_dof = 0;
};

/// Typed, validated settings with defaults for missing keys. Throws ConfigError.
Settings resolve_settings(const KeyValues& kv);

/// The layout used for `method` when the config does not name one.
LayoutStrategy layout_for(const Settings& settings, const MethodChoice& method);

RunConfig make_run_config(const Settings& settings);
RunConfig make_run_config(const Settings& settings, const MethodChoice& method, int dof);

/// Resolved settings as `key = value` lines.
std::string describe(const Settings& settings);

}  // namespace vlasov
