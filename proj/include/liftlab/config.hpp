#pragma once

// Run configuration for the command-line tool. TOML and JSON files share one
// schema (see docs/config.md); TOML is converted to JSON on load.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liftlab/catalog.hpp"
#include "liftlab/dynamics.hpp"
#include "liftlab/error.hpp"

namespace liftlab {

using Json = nlohmann::ordered_json;

/// Invalid configuration; the message starts with the offending key path.
class ConfigError : public InputError {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : InputError(key.empty() ? message : key + ": " + message), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct OutputSpec {
  std::optional<std::string> path;  // stdout when empty
  std::string format = "csv";       // csv | json
};

struct RunConfig {
  Json raw;
  std::optional<CatalogModel> model;
  std::optional<CatalogModel> model2;
  IntegratorConfig integrator;
  VariationConfig variation;
  std::uint64_t seed = 0x5eed;
  OutputSpec output;

  const CatalogModel& primary() const { return *model; }
  /// Section `name`, or an empty object.
  const Json& section(const std::string& name) const;
};

/// Reads a .toml or .json file into JSON. Throws ConfigError on syntax errors.
Json load_config_file(const std::string& path);

RunConfig read_config(const Json& doc);
inline RunConfig load_config(const std::string& path) { return read_config(load_config_file(path)); }

CatalogModel build_model(const Json& section, const std::string& key);

// Typed accessors with key-path diagnostics.
double get_double(const Json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback = std::nullopt);
std::vector<double> get_vector(const Json& obj, const std::string& key, const std::string& path,
                               std::optional<std::size_t> length = std::nullopt);
std::string get_string(const Json& obj, const std::string& key, const std::string& path,
                       std::optional<std::string> fallback = std::nullopt);
/// Expression over `vars` from a string or number entry; parse failures are
/// reported as ConfigError with the byte offset inside the expression.
ScalarField get_field(const Json& value, int level, int n, const std::string& path,
                      ParseOptions opts = {});

}  // namespace liftlab
