#pragma once

// Successive-approximation division: given beta in C(y) with v(beta) >= vS,
// builds a_m in R_3 with f(a_m) = beta - beta_m and v(beta_m) >= m + vS,
// consuming one valuation band [m + vS, m + 1 + vS) of beta_m per step with
// (q, s)-adapted elements.

#include <map>
#include <vector>

#include "hahn/builder.hpp"

namespace hahn {

struct NormalizedTarget {
  /// beta was multiplied by t^shift.
  unsigned long shift = 0;
  TruncatedSeries beta;
};

/// Smallest k >= 0 with v(t^k beta) >= vS. A zero beta is returned as is.
NormalizedTarget normalizeTarget(const TruncatedSeries& beta, const Rat& vS);

/// Terms of beta with m + vS <= weight < m + 1 + vS.
TruncatedSeries slice(const TruncatedSeries& beta, std::size_t m, const Rat& vS);

struct DivisionStep {
  std::size_t m = 0;
  TruncatedSeries slice;
  TateElement e;
  TateElement aNext;
  TruncatedSeries betaNext;
  /// m + 1 + vS; v(betaNext) is certified to be at least this.
  Rat certifiedBound;
  /// Lower bound on v(betaNext) actually observed.
  Rat residualValuation;
  /// Stages whose adapted elements were used, by exponent.
  std::vector<Rat> exponents;
  std::vector<Rat> quotientValuations;
};

struct DivisionTrace {
  TruncatedSeries target;
  std::vector<DivisionStep> steps;
  TateElement aFinal;
  TruncatedSeries betaFinal;
  /// Lower bound for v(f(a_M) - beta), recomputed from scratch.
  Rat finalResidualValuation;
};

struct DivisionOptions {
  /// Hard limit on plan growth.
  std::size_t maxStages = 4096;
  /// Recompute f(a_m) + beta_m = beta after every step.
  bool checkEveryStep = true;
};

class Divider {
 public:
  Divider(AlphaPlan& plan, TruncatedSeries beta, DivisionOptions options = {});

  /// One band of the division; throws ContractViolation if a certified
  /// bound fails.
  const DivisionStep& step();

  std::size_t stepsTaken() const { return steps_.size(); }
  const TateElement& a() const { return a_; }
  const TruncatedSeries& residual() const { return beta_; }
  const std::vector<DivisionStep>& steps() const { return steps_; }

  /// The adapted certificate for q, extending the plan on demand.
  const AdaptedCertificate& adaptedFor(const Rat& q);

 private:
  AlphaPlan& plan_;
  DivisionOptions options_;
  TruncatedSeries target_;
  TateElement a_;
  TruncatedSeries beta_;
  std::vector<DivisionStep> steps_;
  std::map<Rat, AdaptedCertificate> certificates_;
};

/// M certified steps on a normalized beta.
DivisionTrace runDivision(const TruncatedSeries& beta, AlphaPlan& plan, std::size_t steps,
                          DivisionOptions options = {});

}  // namespace hahn
