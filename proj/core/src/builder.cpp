#include "hahn/builder.hpp"

#include <algorithm>

#include "hahn/errors.hpp"

namespace hahn {

const char* stageOriginName(StageOrigin o) {
  switch (o) {
    case StageOrigin::Enumeration: return "enumeration";
    case StageOrigin::Demand: return "demand";
    case StageOrigin::Lookahead: return "lookahead";
  }
  return "?";
}

AlphaPlan::AlphaPlan(const InstanceParams& params, Rat workPrec)
    : params_(params),
      workPrec_(std::move(workPrec)),
      field_(GroundField(params.p), params.gammaX),
      tate_(GroundField(params.p), 3),
      c_(chooseC(field_.base(), params.gammaX, params.vS)),
      omega_(params.p) {
  if (!(params_.vS.sign() > 0 && params_.vS < Rat(1))) {
    throw Error(ErrorCode::InvalidArgument, "vS must lie in (0, 1)");
  }
}

std::optional<std::size_t> AlphaPlan::stageFor(const Rat& q) const {
  const auto it = byLabel_.find(q);
  if (it == byLabel_.end()) return std::nullopt;
  return it->second;
}

Rat AlphaPlan::stageValue(std::size_t m) const {
  const StageRecord& s = stage(m);
  return s.vE + s.label * params_.gammaX;
}

Rat AlphaPlan::alphaTermWeight(std::size_t m) const {
  return ratPow(params_.p, static_cast<long>(stage(m).b)) * stageValue(m);
}

Rat AlphaPlan::divisibilityOffset(std::size_t j) const {
  // alpha_j / f(W_j) is the ground element e_j^(p^b_j), divided by
  // c^(|q_j| p^b_j) when q_j < 0.
  const StageRecord& s = stage(j);
  const Rat scale = ratPow(params_.p, static_cast<long>(s.b));
  if (s.label.sign() >= 0) return scale * s.vE;
  return scale * (s.vE - s.label.abs() * c_.valuation);
}

Rat AlphaPlan::tailBound() const {
  const Rat byIndex(static_cast<long>(stages_.size() + 1));
  if (stages_.empty()) return byIndex;
  const Rat byGrowth =
      ratPow(params_.p, static_cast<long>(stages_.back().b)) * (Rat(1) + params_.vS);
  return std::max(byIndex, byGrowth);
}

Rat AlphaPlan::stageResolution(std::size_t m) const {
  const StageRecord& s = stage(m);
  return (s.vEps + tailBound()) * ratPow(params_.p, -static_cast<long>(s.b));
}

void AlphaPlan::resolveStage(std::size_t m, const Rat& needed, std::size_t maxStages) {
  while (stageResolution(m) < needed) {
    if (stages_.size() >= maxStages) {
      throw Error(ErrorCode::StageUnavailable,
                  "stage budget of " + std::to_string(maxStages) + " reached while resolving stage " +
                      std::to_string(m));
    }
    appendNextEnumerated(StageOrigin::Lookahead);
  }
}

std::size_t AlphaPlan::appendStage(const Rat& q, StageOrigin origin) {
  const unsigned p = params_.p;
  if (!isInZp(q, p)) throw Error(ErrorCode::InvalidArgument, q.str() + " is not in Z[1/p]");
  if (byLabel_.count(q) != 0) {
    throw Error(ErrorCode::InvalidArgument, "stage for " + q.str() + " already exists");
  }
  StageRecord s;
  s.m = stages_.size() + 1;
  s.label = q;
  s.origin = origin;
  const Rat shift = q * params_.gammaX;
  s.vE = simplestPadicIn(-shift, -shift + params_.vS, p);
  const Rat value = s.vE + shift;

  // eps_m must make every eps_m alpha_j divisible by f(W_j) in O_C.
  s.vEps = Rat(0);
  for (std::size_t j = 1; j <= stages_.size(); ++j) s.vEps = std::max(s.vEps, -divisibilityOffset(j));

  if (s.m > 1) {
    const Rat threshold = Rat(1) + params_.vS;
    const Rat index(static_cast<long>(s.m));
    // The growth constraint forces b_m > b_j for every earlier stage.
    unsigned long b = stages_.back().b + 1;
    for (;; ++b) {
      const Rat scale = ratPow(p, static_cast<long>(b));
      const bool termSmall = index < scale * value;
      const bool leadInRange = s.vEps / scale + value < params_.vS;
      const bool gapWide = threshold < ratPow(p, static_cast<long>(b - stages_.back().b)) * value;
      if (termSmall && leadInRange && gapWide) break;
    }
    s.b = b;
  }
  checkStage(s);
  stages_.push_back(s);
  byLabel_.emplace(q, s.m);
  return s.m;
}

std::size_t AlphaPlan::appendNextEnumerated(StageOrigin origin) {
  while (true) {
    Rat q = omega_.next().value();
    if (byLabel_.count(q) == 0) return appendStage(q, origin);
  }
}

void AlphaPlan::checkStage(const StageRecord& s) const {
  const unsigned p = params_.p;
  const Rat value = s.vE + s.label * params_.gammaX;
  const Rat scale = ratPow(p, static_cast<long>(s.b));
  const auto fail = [&](const std::string& what) {
    return Error(ErrorCode::ContractViolation, "stage " + std::to_string(s.m) + ": " + what);
  };
  if (!(value.sign() > 0 && value < params_.vS)) throw fail("s < |e x^q| < 1 fails");
  if (s.vEps.sign() < 0) throw fail("eps not integral");
  const Rat lead = s.vEps / scale + value;
  if (!(lead.sign() > 0 && lead < params_.vS)) throw fail("s < |eps^(1/p^b) e x^q| < 1 fails");
  if (s.m == 1) {
    if (s.b != 0) throw fail("b_1 must be 0");
    return;
  }
  if (!(Rat(static_cast<long>(s.m)) < scale * value)) throw fail("|alpha_m| < |t|^m fails");
  for (std::size_t j = 1; j < s.m; ++j) {
    const StageRecord& prev = stage(j);
    if (s.vEps + divisibilityOffset(j) < Rat(0)) throw fail("eps alpha_j not divisible by f(W_j)");
    if (s.b <= prev.b) throw fail("b not increasing");
    if (!(Rat(1) + params_.vS < ratPow(p, static_cast<long>(s.b - prev.b)) * value)) {
      throw fail("|(e x^q)^(p^(b_m - b_j))| < |t| s fails");
    }
  }
}

TruncatedSeries AlphaPlan::alpha() const {
  TruncatedSeries a(field_.profile(), Precision::at(tailBound()));
  for (const auto& s : stages_) {
    const Rat scale = ratPow(params_.p, static_cast<long>(s.b));
    a.addTerm({scale * s.vE, scale * s.label}, 1);
  }
  return a;
}

SubstitutionMap AlphaPlan::substitution() const {
  return SubstitutionMap(field_, {field_.x(), field_.monomial(1, c_.valuation, Rat(-1)), alpha()});
}

AlphaPlan buildPlan(const InstanceParams& params, std::size_t stages, const Rat& workPrec) {
  if (stages == 0) throw Error(ErrorCode::InvalidArgument, "need at least one stage");
  if (!(Rat(static_cast<long>(stages + 1)) < workPrec)) {
    const mpz_class supported = workPrec.ceil() - 2;
    throw Error(ErrorCode::PrecisionExhausted,
                "working precision " + workPrec.str() + " resolves at most " +
                    (supported > 0 ? supported.get_str() : std::string("0")) + " stages");
  }
  AlphaPlan plan(params, workPrec);
  for (std::size_t m = 1; m <= stages; ++m) plan.appendNextEnumerated(StageOrigin::Enumeration);
  return plan;
}

TruncatedSeries assembleAlpha(const AlphaPlan& plan) { return plan.alpha(); }

TateElement adaptedPower(const AlphaPlan& plan, std::size_t m) {
  const StageRecord& s = plan.stage(m);
  const TateAlgebra& tate = plan.tate();
  const unsigned p = plan.params().p;
  TruncatedSeries sum = tate.monomial(1, s.vEps, std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
  for (std::size_t j = 1; j < m; ++j) {
    const StageRecord& prev = plan.stage(j);
    const Rat power = ratPow(p, static_cast<long>(prev.b)) * prev.label.abs();
    std::vector<Rat> w{Rat(0), Rat(0), Rat(0)};
    if (prev.label.sign() > 0) w[0] = power;
    if (prev.label.sign() < 0) w[1] = power;
    // d_j = eps_m alpha_j / f(W_j) = t^(vEps + offset_j), coefficient 1.
    sum.addTerm(tate.monomial(1, s.vEps + plan.divisibilityOffset(j), w).terms().begin()->first,
                fpNeg(1, p));
  }
  return TateElement(tate, std::move(sum));
}

AdaptedCertificate buildAdapted(const AlphaPlan& plan, std::size_t m) {
  if (m == 0 || m > plan.size()) throw Error(ErrorCode::InvalidArgument, "no such stage");
  const StageRecord& s = plan.stage(m);
  const Rat& vS = plan.params().vS;
  const Rat residualTarget = Rat(1) + vS;
  const auto fail = [&](const std::string& what) {
    return Error(ErrorCode::AdaptednessFailed,
                 "stage " + std::to_string(m) + " (q = " + s.label.str() + "): " + what);
  };

  const TateElement power = adaptedPower(plan, m);
  TateElement preimage(plan.tate(), frobenius(power.series(), -static_cast<long>(s.b)));
  if (!preimage.isIntegral()) throw fail("preimage is not integral");

  const Rat cap = std::min(plan.workPrec(), plan.stageResolution(m));
  if (cap < residualTarget) {
    throw Error(ErrorCode::PrecisionExhausted,
                "stage " + std::to_string(m) + " resolved only to " + cap.str());
  }
  TruncatedSeries image = applySubstitution(plan.substitution(), preimage, cap);

  AdaptedCertificate cert{m, s.label, vS, preimage, image, Rat(0), 0, Rat(0), Rat(0), {}};
  for (std::size_t j = 1; j < m; ++j) {
    cert.quotientValuations.push_back(s.vEps + plan.divisibilityOffset(j));
    if (cert.quotientValuations.back().sign() < 0) throw fail("d_j is not in O_C");
  }

  std::optional<Leading> lead;
  try {
    lead = valuationAndLeading(image);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AmbiguousLeading) throw;
    throw fail("leading monomial is not unique");
  }
  if (!lead) throw fail("image vanishes to precision " + image.precision().str());
  cert.leadT = lead->exponent[0];
  cert.leadCoeff = lead->coeff;
  cert.imageValuation = lead->valuation;
  cert.normInRange = lead->valuation.sign() >= 0 && lead->valuation < vS;
  cert.leadingExponentOk = lead->exponent[1] == s.label;

  TruncatedSeries residual = image;
  residual.addTerm(lead->exponent, fpNeg(lead->coeff, plan.params().p));
  const Precision rb = residual.valuationBound();
  cert.residualBound = rb.isExact() ? cap : rb.bound();
  cert.residualOk = !(cert.residualBound < residualTarget);

  if (!cert.normInRange) throw fail("v(image) = " + lead->valuation.str() + " not in [0, vS)");
  if (!cert.leadingExponentOk) {
    throw fail("leading x-exponent " + lead->exponent[1].str() + " differs from q");
  }
  if (!cert.residualOk) {
    throw fail("tail valuation " + cert.residualBound.str() + " below 1 + vS");
  }
  return cert;
}

}  // namespace hahn
