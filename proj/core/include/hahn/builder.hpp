#pragma once

// The counterexample map f: R_3 -> C(y), x1 -> x, x2 -> c/x, x3 -> alpha, with
//
//   alpha = sum_m (e_m x^q_m)^(p^b_m),
//
// and the integral elements whose images are (q, s)-adapted. All choices are
// monomials: e_m = t^vE_m, eps_m = t^vEps_m, c = t^vC, so every quotient the
// construction needs is exact.

#include <map>
#include <optional>
#include <vector>

#include "hahn/fields.hpp"
#include "hahn/tate.hpp"

namespace hahn {

struct InstanceParams {
  unsigned p = 3;
  Rat gammaX{1, 2};
  Rat vS{1, 4};
};

enum class StageOrigin {
  /// Stage m carries omega(m).
  Enumeration,
  /// Appended because the division algorithm needed an adapted element for
  /// this exponent.
  Demand,
  /// Next unused omega value, appended to sharpen the tail bound of alpha.
  Lookahead,
};

const char* stageOriginName(StageOrigin o);

struct StageRecord {
  std::size_t m = 0;  // 1-based
  Rat label;          // the exponent q_m in Z[1/p]
  Rat vE;             // v(e_m)
  unsigned long b = 0;
  Rat vEps;           // v(eps_m)
  StageOrigin origin = StageOrigin::Enumeration;
};

class AlphaPlan {
 public:
  AlphaPlan(const InstanceParams& params, Rat workPrec);

  const InstanceParams& params() const { return params_; }
  const Rat& workPrec() const { return workPrec_; }
  const ResidueField& field() const { return field_; }
  const TateAlgebra& tate() const { return tate_; }
  const CChoice& c() const { return c_; }
  const std::vector<StageRecord>& stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }
  const StageRecord& stage(std::size_t m) const { return stages_.at(m - 1); }

  std::optional<std::size_t> stageFor(const Rat& q) const;

  /// Appends a stage for q with the minimal admissible (vE, vEps, b).
  std::size_t appendStage(const Rat& q, StageOrigin origin);
  /// Appends the first omega value not yet used.
  std::size_t appendNextEnumerated(StageOrigin origin);

  /// vE_m + q_m gammaX, the value of e_m x^q_m; lies in (0, vS).
  Rat stageValue(std::size_t m) const;
  /// v(alpha_m) = p^b_m * stageValue(m).
  Rat alphaTermWeight(std::size_t m) const;
  /// Every stage not yet appended has weight strictly above this bound.
  Rat tailBound() const;
  /// Precision to which f(a_q_m) is determined by the current stages.
  Rat stageResolution(std::size_t m) const;
  /// Appends lookahead stages until stageResolution(m) >= needed.
  void resolveStage(std::size_t m, const Rat& needed, std::size_t maxStages);

  /// alpha over all current stages; precision = tailBound().
  TruncatedSeries alpha() const;
  /// (x, c x^-1, alpha).
  SubstitutionMap substitution() const;

  /// v(eps_m alpha_j / f(W_j)) - v(eps_m): the part depending only on j.
  Rat divisibilityOffset(std::size_t j) const;

 private:
  void checkStage(const StageRecord& s) const;

  InstanceParams params_;
  Rat workPrec_;
  ResidueField field_;
  TateAlgebra tate_;
  CChoice c_;
  std::vector<StageRecord> stages_;
  std::map<Rat, std::size_t> byLabel_;
  OmegaEnumerator omega_;
};

/// Stages 1..M from the omega enumeration. Throws PrecisionExhausted when
/// workPrec <= M + 1, naming the largest M the precision supports.
AlphaPlan buildPlan(const InstanceParams& params, std::size_t stages, const Rat& workPrec);

/// alpha = sum of the plan's stages, precision = the certified tail bound.
TruncatedSeries assembleAlpha(const AlphaPlan& plan);

struct AdaptedCertificate {
  std::size_t stage = 0;
  Rat q;
  Rat vS;
  TateElement preimage;
  TruncatedSeries image;
  /// Leading term of the image: coeff * t^leadT * x^q.
  Rat leadT;
  Coeff leadCoeff = 0;
  Rat imageValuation;
  /// Lower bound for v(image - leading term).
  Rat residualBound;
  /// v(d_j) for j < stage.
  std::vector<Rat> quotientValuations;
  bool normInRange = false;      // 0 <= v(image) < vS
  bool leadingExponentOk = false;  // x-exponent of the leading term is q
  bool residualOk = false;       // v(image - leading) >= 1 + vS
};

/// Builds a_q for stage m from eps_m x3 - sum_{j<m} d_j W_j and checks that
/// f(a_q) is (q, s)-adapted. Throws AdaptednessFailed on any failed check.
AdaptedCertificate buildAdapted(const AlphaPlan& plan, std::size_t m);

/// eps_m x3 - sum_{j<m} d_j W_j, i.e. a_q^(p^b_m).
TateElement adaptedPower(const AlphaPlan& plan, std::size_t m);

}  // namespace hahn
