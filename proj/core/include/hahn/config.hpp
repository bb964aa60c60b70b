#pragma once

// Instance configuration shared by the command-line tool and the tests.

#include <cstdint>
#include <optional>
#include <string>

#include "hahn/builder.hpp"

namespace hahn {

/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnv = "HAHNCERT_CONFIG";

struct InstanceConfig {
  unsigned p = 3;
  Rat gammaX{1, 2};
  Rat vS{1, 4};
  /// Unset means 2(M + 1).
  std::optional<Rat> workPrec;
  std::size_t stages = 12;
  std::uint64_t seed = 20240901;

  Rat effectiveWorkPrec() const;
  InstanceParams params() const;
  /// Throws Error(InvalidArgument) naming the first violated invariant.
  void validate() const;
};

/// Keys: p, gamma_x, v_s, work_prec, stages, seed. Rationals are strings.
/// Missing keys keep their defaults; unknown keys are a format error.
InstanceConfig parseConfig(const std::string& jsonText);
InstanceConfig loadConfigFile(const std::string& path);
/// The file named by HAHNCERT_CONFIG, or the defaults.
InstanceConfig defaultConfig();

}  // namespace hahn
