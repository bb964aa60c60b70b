#include "hahn/division.hpp"

#include "hahn/errors.hpp"

namespace hahn {

namespace {

// Lower bound for v(s); exact zero is bounded by the fallback.
Rat valuationLowerBound(const TruncatedSeries& s, const Rat& fallback) {
  const Precision v = s.valuationBound();
  return v.isExact() ? fallback : v.bound();
}

}  // namespace

NormalizedTarget normalizeTarget(const TruncatedSeries& beta, const Rat& vS) {
  // Ties at the minimal weight are legitimate here, so only the valuation is
  // read, never a leading monomial.
  if (beta.isZero()) return {0, beta};
  const Rat v = beta.valuationBound().bound();
  unsigned long k = 0;
  if (v < vS) k = Rat(vS - v).ceil().get_ui();
  if (k == 0) return {0, beta};
  ExponentVec shift(beta.weights().dimension(), Rat(0));
  shift[0] = Rat(static_cast<long>(k));
  return {k, mulMonomial(beta, 1, shift)};
}

TruncatedSeries slice(const TruncatedSeries& beta, std::size_t m, const Rat& vS) {
  const Rat lo = Rat(static_cast<long>(m)) + vS;
  const Rat hi = lo + Rat(1);
  TruncatedSeries out(beta.profile());
  for (const auto& [e, c] : beta.terms()) {
    const Rat w = beta.weights().weightOf(e);
    if (!(w < lo) && w < hi) out.addTerm(e, c);
  }
  return out;
}

Divider::Divider(AlphaPlan& plan, TruncatedSeries beta, DivisionOptions options)
    : plan_(plan),
      options_(options),
      target_(capPrecision(beta, plan.workPrec())),
      a_(plan.tate(), TruncatedSeries::zero(plan.tate().profile())),
      beta_(target_) {
  if (!(beta.weights() == *plan.field().profile())) {
    throw Error(ErrorCode::ProfileMismatch, "target is not in the residue field");
  }
  const Rat& vS = plan.params().vS;
  if (valuationLowerBound(target_, plan.workPrec()) < vS) {
    throw Error(ErrorCode::InvalidArgument, "target is not normalized: v(beta) < vS");
  }
}

const AdaptedCertificate& Divider::adaptedFor(const Rat& q) {
  auto cached = certificates_.find(q);
  if (cached != certificates_.end()) return cached->second;
  std::size_t m = 0;
  if (const auto existing = plan_.stageFor(q)) {
    m = *existing;
  } else {
    if (plan_.size() >= options_.maxStages) {
      throw Error(ErrorCode::StageUnavailable, "no stage budget left for exponent " + q.str());
    }
    m = plan_.appendStage(q, StageOrigin::Demand);
  }
  plan_.resolveStage(m, plan_.workPrec(), options_.maxStages);
  return certificates_.emplace(q, buildAdapted(plan_, m)).first->second;
}

const DivisionStep& Divider::step() {
  const std::size_t m = steps_.size();
  const Rat& vS = plan_.params().vS;
  const Rat mRat(static_cast<long>(m));
  const Rat bound = mRat + Rat(1) + vS;
  if (beta_.precision() < Precision::at(bound)) {
    throw Error(ErrorCode::InsufficientPrecision,
                "residual known to " + beta_.precision().str() + ", step " + std::to_string(m) +
                    " needs " + bound.str());
  }
  const auto fail = [&](const std::string& what) {
    return Error(ErrorCode::ContractViolation, "step " + std::to_string(m) + ": " + what);
  };

  TruncatedSeries band = slice(beta_, m, vS);
  const ProfilePtr& ground = plan_.field().base().profile();
  std::map<Rat, TruncatedSeries> byExponent;
  for (const auto& [e, c] : band.terms()) {
    auto it = byExponent.try_emplace(e[1], ground).first;
    it->second.addTerm({e[0]}, c);
  }

  const unsigned p = plan_.params().p;
  TruncatedSeries e(plan_.tate().profile());
  TruncatedSeries fe(plan_.field().profile());
  DivisionStep record{m, band, a_, a_, beta_, bound, Rat(0), {}, {}};
  for (const auto& [q, coeff] : byExponent) {
    const AdaptedCertificate& cert = adaptedFor(q);
    // b = c_q d t^m with c_q x^q the leading term of f(a_q).
    const TruncatedSeries d =
        mulMonomial(coeff, fpInv(cert.leadCoeff, p), {-(cert.leadT + mRat)});
    const Rat vd = valuationAndLeading(d)->valuation;
    if (vd.sign() <= 0) throw fail("quotient for x^" + q.str() + " has valuation " + vd.str());
    record.exponents.push_back(q);
    record.quotientValuations.push_back(vd);
    for (const auto& [de, dc] : d.terms()) {
      const Rat shift = de[0] + mRat;
      e = add(e, mulMonomial(cert.preimage.series(), dc, {shift, Rat(0), Rat(0), Rat(0)}));
      fe = add(fe, mulMonomial(cert.image, dc, {shift, Rat(0)}));
    }
  }

  TateElement eElem(plan_.tate(), std::move(e));
  a_ = TateElement(plan_.tate(), add(a_.series(), eElem.series()));
  beta_ = capPrecision(sub(beta_, fe), plan_.workPrec());

  record.residualValuation = valuationLowerBound(beta_, plan_.workPrec());
  if (record.residualValuation < bound) {
    throw fail("v(beta_" + std::to_string(m + 1) + ") = " + record.residualValuation.str() +
               " below " + bound.str());
  }
  const Precision gauss = eElem.series().valuationBound();
  if (!gauss.isExact() && gauss.bound() < mRat) throw fail("|a_(m+1) - a_m| > |t|^m");

  if (options_.checkEveryStep) {
    const TruncatedSeries image = applySubstitution(plan_.substitution(), a_, plan_.workPrec());
    if (!sub(add(image, beta_), target_).isZero()) throw fail("f(a) + beta_m differs from beta");
  }

  record.e = std::move(eElem);
  record.aNext = a_;
  record.betaNext = beta_;
  steps_.push_back(std::move(record));
  return steps_.back();
}

DivisionTrace runDivision(const TruncatedSeries& beta, AlphaPlan& plan, std::size_t steps,
                          DivisionOptions options) {
  Divider divider(plan, beta, options);
  for (std::size_t i = 0; i < steps; ++i) divider.step();

  const TruncatedSeries target = capPrecision(beta, plan.workPrec());
  const TruncatedSeries image = applySubstitution(plan.substitution(), divider.a(), plan.workPrec());
  const TruncatedSeries diff = sub(image, target);
  const Rat finalBound = valuationLowerBound(diff, plan.workPrec());
  const Rat required = Rat(static_cast<long>(steps)) + plan.params().vS;
  if (finalBound < required) {
    throw Error(ErrorCode::ContractViolation,
                "v(f(a_M) - beta) = " + finalBound.str() + " below " + required.str());
  }
  return {target, divider.steps(), divider.a(), divider.residual(), finalBound};
}

}  // namespace hahn
