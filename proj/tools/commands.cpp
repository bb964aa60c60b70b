#include "commands.hpp"

#include <ostream>
#include <random>
#include <sstream>

#include "hahn/errors.hpp"
#include "hahn/serialize.hpp"

namespace hahncli {

using namespace hahn;

int exitCodeFor(const Error& e) { return e.isContractViolation() ? kContract : kUsage; }

namespace {

AlphaPlan planFor(const InstanceConfig& cfg) {
  cfg.validate();
  return buildPlan(cfg.params(), cfg.stages, cfg.effectiveWorkPrec());
}

}  // namespace

BuildOutput cmdBuild(const InstanceConfig& cfg) {
  AlphaPlan plan = planFor(cfg);
  std::vector<AdaptedCertificate> certs;
  for (std::size_t m = 1; m <= plan.size(); ++m) certs.push_back(buildAdapted(plan, m));
  return {planTranscript(plan, certs), toText(assembleAlpha(plan))};
}

std::string cmdAdapted(const InstanceConfig& cfg, const std::string& q) {
  const Rat label = Rat::parse(q);
  AlphaPlan plan = planFor(cfg);
  std::size_t m = 0;
  if (const auto existing = plan.stageFor(label)) {
    m = *existing;
  } else {
    m = plan.appendStage(label, StageOrigin::Demand);
    plan.resolveStage(m, Rat(1) + cfg.vS, 4096);
  }
  return certificateDocument(plan, buildAdapted(plan, m));
}

DivideOutput cmdDivide(const InstanceConfig& cfg, const std::string& betaText, std::size_t steps) {
  AlphaPlan plan = planFor(cfg);
  const TruncatedSeries beta = parseSeries(betaText, plan.field().profile());
  const NormalizedTarget normalized = normalizeTarget(beta, cfg.vS);
  const std::size_t taken = normalized.beta.isZero() ? 0 : steps;
  const DivisionTrace trace = runDivision(normalized.beta, plan, taken);
  return {traceDocument(plan, trace, {betaText, normalized.shift}), normalized.shift};
}

std::string cmdClassify(const InstanceConfig& cfg, const std::vector<std::string>& radii) {
  cfg.validate();
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "at least one radius is required");
  const GroundField field(cfg.p);
  std::vector<RadiusValue> values;
  for (const auto& r : radii) {
    if (r == "point" || r == "inf") {
      values.emplace_back(std::nullopt);
    } else {
      values.emplace_back(Rat::parse(r));
    }
  }
  const std::vector<TruncatedSeries> center(values.size(), TruncatedSeries(field.profile()));
  const PointType type = classifyDiskPoint(field, center, values);
  std::ostringstream out;
  out << "radii:";
  for (const auto& r : radii) out << ' ' << r;
  out << "\ntype: " << pointTypeName(type) << "\n";
  return out.str();
}

VerifyReport cmdVerify(const std::string& document) { return verifyDocument(document); }

std::string formatReport(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& f : report.findings) out << "FAIL " << f.location << ": " << f.message << "\n";
  out << (report.ok() ? "PASS " : "FAIL ") << report.format << " (" << report.checks
      << " checks, " << report.findings.size() << " findings)\n";
  return out.str();
}

int cmdSelftest(const InstanceConfig& cfg, std::ostream& log) {
  int failures = 0;
  const auto record = [&](const std::string& name, const VerifyReport& r) {
    log << (r.ok() ? "ok   " : "FAIL ") << name << "\n";
    if (!r.ok()) {
      ++failures;
      log << formatReport(r);
    }
  };
  const BuildOutput built = cmdBuild(cfg);
  record("plan transcript", cmdVerify(built.transcript));
  record("certificate q=0", cmdVerify(cmdAdapted(cfg, "0")));

  const ResidueField field(GroundField(cfg.p), cfg.gammaX);
  std::mt19937_64 rng(cfg.seed);
  const long dens[] = {1, static_cast<long>(cfg.p), static_cast<long>(cfg.p * cfg.p)};
  for (int i = 0; i < 3; ++i) {
    TruncatedSeries beta(field.profile());
    const int terms = 1 + static_cast<int>(rng() % 6);
    for (int j = 0; j < terms; ++j) {
      const Rat q(static_cast<long>(rng() % 9) - 4, dens[rng() % 3]);
      const Rat a(static_cast<long>(rng() % 12), dens[rng() % 3]);
      beta.addTerm({a, q}, static_cast<Coeff>(1 + rng() % (cfg.p - 1)));
    }
    const std::size_t steps = std::min<std::size_t>(4, cfg.stages);
    const DivideOutput out = cmdDivide(cfg, toText(beta), steps);
    record("division trace " + std::to_string(i + 1), cmdVerify(out.trace));
  }
  log << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
  return failures == 0 ? kPass : kContract;
}

}  // namespace hahncli
