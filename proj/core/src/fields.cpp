#include "hahn/fields.hpp"

#include "hahn/errors.hpp"

namespace hahn {

GroundField::GroundField(unsigned p)
    : p_(p), profile_(makeProfile(p, {Rat(1)}, {"t"})) {
  if (p % 2 == 0) throw Error(ErrorCode::InvalidArgument, "ground field needs an odd prime");
}

TruncatedSeries GroundField::uniformizer() const { return monomial(1, Rat(1)); }

TruncatedSeries GroundField::monomial(Coeff c, const Rat& a) const {
  return TruncatedSeries::monomial(profile_, c, {a});
}

ResidueField::ResidueField(GroundField base, Rat gammaX)
    : base_(std::move(base)),
      gammaX_(std::move(gammaX)),
      profile_(makeProfile(base_.prime(), {Rat(1), gammaX_}, {"t", "x"})) {
  if (gammaX_.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "gammaX must be positive");
  if (base_.valueInGroundGroup(gammaX_)) {
    throw Error(ErrorCode::InvalidArgument,
                "gammaX = " + gammaX_.str() + " lies in the value group; not a Type III radius");
  }
}

TruncatedSeries ResidueField::x() const { return monomial(1, Rat(0), Rat(1)); }

TruncatedSeries ResidueField::monomial(Coeff c, const Rat& a, const Rat& q) const {
  return TruncatedSeries::monomial(profile_, c, {a, q});
}

TruncatedSeries ResidueField::embedGround(const TruncatedSeries& a) const {
  if (!(a.weights() == *base_.profile())) {
    throw Error(ErrorCode::ProfileMismatch, "not a ground-field element");
  }
  TruncatedSeries out(profile_, a.precision());
  for (const auto& [e, c] : a.terms()) out.addTerm({e[0], Rat(0)}, c);
  return out;
}

const char* pointTypeName(PointType t) {
  switch (t) {
    case PointType::TypeI: return "TypeI";
    case PointType::TypeII: return "TypeII";
    case PointType::TypeIII: return "TypeIII";
  }
  return "?";
}

PointType classifyDiskPoint(const GroundField& field, std::span<const TruncatedSeries> center,
                            std::span<const RadiusValue> radii) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radius given");
  if (!center.empty() && center.size() != radii.size()) {
    throw Error(ErrorCode::InvalidArgument, "center and radii differ in dimension");
  }
  for (const auto& c : center) {
    const Precision v = c.valuationBound();
    if (!v.isExact() && v.bound().sign() < 0) {
      throw Error(ErrorCode::InvalidArgument, "center lies outside the unit ball");
    }
  }
  bool allPoints = true;
  bool allInGroup = true;
  for (const auto& r : radii) {
    if (!r) continue;
    allPoints = false;
    if (r->sign() < 0) throw Error(ErrorCode::InvalidArgument, "radius value must be >= 0");
    if (!field.valueInGroundGroup(*r)) allInGroup = false;
  }
  if (allPoints) return PointType::TypeI;
  return allInGroup ? PointType::TypeII : PointType::TypeIII;
}

CChoice chooseC(const GroundField& field, const Rat& gammaX, const Rat& vS) {
  if (vS.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "vS must be positive");
  const Rat v = simplestPadicIn(gammaX, gammaX + vS, field.prime());
  const Rat margin = v - gammaX;
  if (!(margin.sign() > 0 && margin < vS)) {
    throw Error(ErrorCode::ContractViolation, "chosen c violates s < |c/x| < 1");
  }
  return {field.monomial(1, v), v, margin};
}

}  // namespace hahn
