#pragma once

// Subcommand bodies of the hahncert tool, callable without a process
// boundary. Errors propagate as hahn::Error; exitCodeFor maps them.

#include <iosfwd>
#include <string>
#include <vector>

#include "hahn/config.hpp"
#include "hahn/errors.hpp"
#include "hahn/verify.hpp"

namespace hahncli {

enum ExitCode : int { kPass = 0, kContract = 1, kUsage = 2 };

int exitCodeFor(const hahn::Error& e);

struct BuildOutput {
  std::string transcript;
  std::string alpha;
};

BuildOutput cmdBuild(const hahn::InstanceConfig& cfg);

/// Certificate for exponent q; extends the plan when q is not a stage label.
std::string cmdAdapted(const hahn::InstanceConfig& cfg, const std::string& q);

struct DivideOutput {
  std::string trace;
  unsigned long shift = 0;
};

DivideOutput cmdDivide(const hahn::InstanceConfig& cfg, const std::string& betaText,
                       std::size_t steps);

/// Radius values as rationals; "point" or "inf" is the radius-0 sentinel.
std::string cmdClassify(const hahn::InstanceConfig& cfg, const std::vector<std::string>& radii);

hahn::VerifyReport cmdVerify(const std::string& document);
std::string formatReport(const hahn::VerifyReport& report);

/// Build, certify, divide seeded targets and verify everything produced.
int cmdSelftest(const hahn::InstanceConfig& cfg, std::ostream& log);

}  // namespace hahncli
