#ifndef AWQ_TOOLS_CAMPAIGN_HPP
#define AWQ_TOOLS_CAMPAIGN_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace awq::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KeyType { Number, Integer, Seed, NumberArray, IntegerArray, Enum, Rates, ComplexArray };

struct KeySpec {
  std::string name;
  KeyType type;
  json default_value;
  std::string description;
  std::vector<std::string> options;  // Enum only
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

struct Report {
  json doc;
  bool pass = true;
  std::optional<std::string> csv;  // polytable
};

const std::vector<std::string>& commands();
const std::vector<KeySpec>& command_keys(const std::string& command);

std::string to_string(KeyType t);

// Checks the document shape and fills defaults; returns the resolved parameter object.
json validate_config(const std::string& command, const json& config);

json load_config(const std::string& path);

Report run(const std::string& command, const json& config, const RunOptions& opts = {});

// Uniform doubles from the top 53 bits, identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1.0p-53); }
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 g_;
};

struct RateSet {
  double alpha, beta, gamma, delta, q;
};

// Sets 0..3 cover the four combinations of |a| and |b| above and below 1.
std::vector<RateSet> random_rate_sets(Rng& rng, int count);

}  // namespace awq::cli

#endif  // AWQ_TOOLS_CAMPAIGN_HPP
