#include "hahn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hahn/errors.hpp"
#include "json.hpp"

namespace hahn {

Rat InstanceConfig::effectiveWorkPrec() const {
  return workPrec ? *workPrec : Rat(2 * static_cast<long>(stages + 1));
}

InstanceParams InstanceConfig::params() const { return {p, gammaX, vS}; }

void InstanceConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (p % 2 == 0 || !isPrime(p)) bad("p = " + std::to_string(p) + " is not an odd prime");
  if (gammaX.sign() <= 0) bad("gamma_x must be positive");
  if (isInZp(gammaX, p)) bad("gamma_x = " + gammaX.str() + " lies in Z[1/p]");
  if (vS.sign() <= 0 || !(vS < Rat(1))) bad("v_s must lie in (0, 1)");
  if (stages == 0) bad("at least one stage is required");
  const Rat wp = effectiveWorkPrec();
  if (!(Rat(static_cast<long>(stages + 1)) < wp)) {
    bad("work_prec = " + wp.str() + " must exceed stages + 1 = " + std::to_string(stages + 1));
  }
}

InstanceConfig parseConfig(const std::string& jsonText) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(jsonText);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Format, std::string("config is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Format, "config must be a JSON object");
  InstanceConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "p") {
        cfg.p = value.get<unsigned>();
      } else if (key == "gamma_x") {
        cfg.gammaX = Rat::parse(value.get<std::string>());
      } else if (key == "v_s") {
        cfg.vS = Rat::parse(value.get<std::string>());
      } else if (key == "work_prec") {
        cfg.workPrec = Rat::parse(value.get<std::string>());
      } else if (key == "stages") {
        cfg.stages = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else {
        throw Error(ErrorCode::Format, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Format, std::string("bad config value: ") + e.what());
  }
  return cfg;
}

InstanceConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Format, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseConfig(buf.str());
}

InstanceConfig defaultConfig() {
  const char* path = std::getenv(kConfigEnv);
  if (path == nullptr || *path == '\0') return {};
  return loadConfigFile(path);
}

}  // namespace hahn
