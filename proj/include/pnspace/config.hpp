#ifndef PNSPACE_CONFIG_HPP
#define PNSPACE_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pnspace/products.hpp"

namespace pnspace {

inline constexpr const char* kConfigSchema = "pnspace-config/1";
inline constexpr const char* kConfigEnv = "PNSPACE_CONFIG";

/// Unknown names and malformed definitions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "M" | "Pi" | "W" | "TG:<ddf>:<alpha>".
TNorm parse_tnorm(const std::string& name);
/// "M*" | "Pi*" | "W*" | "<tnorm>*" (the dual conorm).
TConorm parse_conorm(const std::string& name);
/// "tau:<tnorm>" | "lift:<tnorm>" | "taustar:<conorm>" | "liftstar:<conorm>".
TriangleFunction parse_triangle(const std::string& name);
/// "ratio[:c]" | "exp[:c]" | "step:<a>".
AnalyticDdf parse_ddf(const std::string& name);
/// "pow:<g>" | "blowup:<b>" | "identity" | "sqrt".
MbFunction parse_m(const std::string& name);
Norm parse_norm(const std::string& name);

/// A named product together with the factor spaces it was built from.
struct BuiltProduct {
  ProductSpace product;
  std::vector<PNSpace> sources;
};

/// Topology experiment definition.
struct TopologyExperiment {
  std::string name;
  std::string kind;
  std::string product;
  double epsilon = 0.05;
  std::size_t samples = 10000;
  std::size_t budget = 100000;
  std::optional<Vector> center;
};

class Config {
 public:
  /// The definitions shipped with the tool.
  static Config builtin();
  static Config from_json(nlohmann::json doc, std::string origin = "inline");
  static Config load(const std::string& path);
  /// `path` when given, else $PNSPACE_CONFIG, else builtin().
  static Config resolve(const std::optional<std::string>& path);

  const nlohmann::json& doc() const { return doc_; }
  const std::string& origin() const { return origin_; }

  /// Overrides the grid resolution of every definition.
  void set_grid_n(std::size_t n) { grid_n_ = n; }
  Grid grid() const;

  std::vector<std::string> space_names() const;
  std::vector<std::string> product_names() const;
  std::vector<std::string> topology_names() const;

  PNSpace space(const std::string& name) const;
  BuiltProduct product(const std::string& name, std::uint64_t seed = 0) const;
  TopologyExperiment topology(const std::string& name) const;

 private:
  Grid grid_of(const nlohmann::json& def) const;
  const nlohmann::json& section(const std::string& key, const std::string& name) const;

  nlohmann::json doc_;
  std::string origin_;
  std::optional<std::size_t> grid_n_;
};

}  // namespace pnspace

#endif
