#include "hahn/tate.hpp"

#include <map>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

std::vector<std::string> tateNames(std::size_t n) {
  std::vector<std::string> names{"t"};
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

Rat pointWeight(const ExponentVec& e, std::span<const Rat> rho) {
  Rat w = e[0];
  for (std::size_t i = 0; i < rho.size(); ++i) w += e[i + 1] * rho[i];
  return w;
}

void checkRho(const TateElement& f, std::span<const Rat> rho) {
  if (rho.size() != f.variables()) {
    throw Error(ErrorCode::InvalidArgument, "need one radius value per variable");
  }
  for (const auto& r : rho) {
    if (r.sign() < 0) throw Error(ErrorCode::InvalidArgument, "radius values must be >= 0");
  }
}

// Power with every intermediate product capped at limit.
TruncatedSeries cappedPower(const TruncatedSeries& y, const mpz_class& n, const Rat& limit) {
  if (y.size() == 1 && y.precision().isExact()) return power(y, n);
  TruncatedSeries result = TruncatedSeries::one(y.profile());
  TruncatedSeries base = capPrecision(y, limit);
  mpz_class k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t()) != 0) result = capPrecision(mul(result, base), limit);
    k >>= 1;
    if (k > 0) base = capPrecision(mul(base, base), limit);
  }
  return result;
}

}  // namespace

TateAlgebra::TateAlgebra(GroundField ground, std::size_t variables)
    : ground_(std::move(ground)), n_(variables) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "Tate algebra needs a variable");
  std::vector<Rat> weights(n_ + 1, Rat(0));
  weights[0] = Rat(1);
  profile_ = makeProfile(ground_.prime(), std::move(weights), tateNames(n_));
}

TruncatedSeries TateAlgebra::monomial(Coeff c, const Rat& a, std::span<const Rat> exps) const {
  if (exps.size() != n_) throw Error(ErrorCode::InvalidArgument, "one exponent per variable");
  ExponentVec e{a};
  e.insert(e.end(), exps.begin(), exps.end());
  return TruncatedSeries::monomial(profile_, c, std::move(e));
}

TruncatedSeries TateAlgebra::variable(std::size_t i) const {
  if (i == 0 || i > n_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  std::vector<Rat> exps(n_, Rat(0));
  exps[i - 1] = Rat(1);
  return monomial(1, Rat(0), exps);
}

TateElement::TateElement(const TateAlgebra& algebra, TruncatedSeries series)
    : series_(std::move(series)) {
  if (!(series_.weights() == *algebra.profile())) {
    throw Error(ErrorCode::ProfileMismatch, "series is not over this Tate algebra");
  }
  const unsigned p = algebra.ground().prime();
  for (const auto& [e, c] : series_.terms()) {
    if (!isInZp(e[0], p)) throw Error(ErrorCode::InvalidArgument, "t-exponent outside Z[1/p]");
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i].sign() < 0 || !isInZp(e[i], p)) {
        throw Error(ErrorCode::InvalidArgument,
                    "variable exponent " + e[i].str() + " is not a nonnegative element of Z[1/p]");
      }
    }
  }
}

bool TateElement::isIntegral() const {
  const Precision v = series_.valuationBound();
  return v.isExact() || v.bound().sign() >= 0;
}

SubstitutionMap::SubstitutionMap(const ResidueField& target, std::vector<TruncatedSeries> images)
    : target_(target), images_(std::move(images)) {
  for (const auto& y : images_) {
    if (!(y.weights() == *target_.profile())) {
      throw Error(ErrorCode::ProfileMismatch, "image is not in the residue field");
    }
    const Precision v = y.valuationBound();
    if (!v.isExact() && v.bound().sign() < 0) {
      throw Error(ErrorCode::InvalidArgument, "image has negative valuation; map not continuous");
    }
  }
}

Rat diskSeminorm(const TateElement& f, std::span<const Rat> rho) {
  checkRho(f, rho);
  const TruncatedSeries& s = f.series();
  if (s.isZero()) {
    throw Error(ErrorCode::IndeterminateFromPrecision,
                "no term resolved; value is only known to be >= " + s.precision().str());
  }
  std::optional<Rat> best;
  for (const auto& [e, c] : s.terms()) {
    Rat w = pointWeight(e, rho);
    if (!best || w < *best) best = std::move(w);
  }
  // Omitted terms have t-exponent >= prec and x-exponents >= 0, hence point
  // weight >= prec.
  if (s.precision().excludes(*best)) {
    throw Error(ErrorCode::IndeterminateFromPrecision,
                "minimum " + best->str() + " not below precision " + s.precision().str());
  }
  return *best;
}

TateElement finiteApprox(const TateElement& f, const Rat& vEps, std::span<const Rat> rho,
                         CutRule rule) {
  checkRho(f, rho);
  const TruncatedSeries& s = f.series();
  if (s.precision().excludes(vEps)) {
    throw Error(ErrorCode::IndeterminateFromPrecision,
                "precision " + s.precision().str() + " does not exceed vEps = " + vEps.str());
  }
  std::map<ExponentVec, Rat> coefficientValuation;
  if (rule == CutRule::CoefficientNorm) {
    for (const auto& [e, c] : s.terms()) {
      ExponentVec m(e.begin() + 1, e.end());
      auto [it, inserted] = coefficientValuation.try_emplace(m, e[0]);
      if (!inserted && e[0] < it->second) it->second = e[0];
    }
  }
  TruncatedSeries kept(s.profile(), s.precision());
  for (const auto& [e, c] : s.terms()) {
    const bool keep = rule == CutRule::PointWeight
                          ? !(vEps < pointWeight(e, rho))
                          : !(vEps < coefficientValuation.at(ExponentVec(e.begin() + 1, e.end())));
    if (keep) kept.addTerm(e, c);
  }
  return TateElement(TateAlgebra(GroundField(s.characteristic()), f.variables()), std::move(kept));
}

EpsilonBound typeIILowerBound(const TateElement& f, const Rat& rho) {
  if (f.variables() != 1) throw Error(ErrorCode::InvalidArgument, "one-variable element expected");
  const unsigned p = f.series().characteristic();
  if (!isInZp(rho, p)) {
    throw Error(ErrorCode::InvalidArgument, "radius value " + rho.str() + " is not Type II");
  }
  const std::vector<Rat> rhos{rho};
  const TruncatedSeries& s = f.series();
  const ExponentVec* chosen = nullptr;
  Rat bound;
  for (const auto& [e, c] : s.terms()) {
    Rat w = pointWeight(e, rhos);
    if (chosen == nullptr || w < bound) {
      chosen = &e;
      bound = std::move(w);
    }
  }
  if (chosen == nullptr || s.precision().excludes(bound)) {
    throw Error(ErrorCode::Unresolved, "no term of f is resolved below the precision");
  }
  // |f - f_eps| < eps and |f_eps| >= eps, so |f| >= eps.
  const TateElement fEps = finiteApprox(f, bound, rhos);
  const Rat approxValue = diskSeminorm(fEps, rhos);
  if (bound < approxValue) {
    throw Error(ErrorCode::ContractViolation, "|f_eps| < eps");
  }
  for (const auto& [e, c] : s.terms()) {
    if (fEps.series().coefficient(e) == 0 && !(bound < pointWeight(e, rhos))) {
      throw Error(ErrorCode::ContractViolation, "remainder term not below eps");
    }
  }
  const Rat value = diskSeminorm(f, rhos);
  if (bound < value) throw Error(ErrorCode::ContractViolation, "|f| < eps");
  return {bound, value, *chosen};
}

TruncatedSeries applySubstitution(const SubstitutionMap& sigma, const TateElement& f,
                                  const Rat& workPrec) {
  const auto& images = sigma.images();
  if (images.size() != f.variables()) {
    throw Error(ErrorCode::InvalidArgument, "substitution needs one image per variable");
  }
  const ProfilePtr& target = sigma.target().profile();
  const TruncatedSeries& s = f.series();
  const Rat limit = s.precision().isExact() ? workPrec : std::min(workPrec, s.precision().bound());

  std::map<std::pair<std::size_t, Rat>, TruncatedSeries> powers;
  const auto factor = [&](std::size_t slot, const Rat& q) -> const TruncatedSeries& {
    auto key = std::make_pair(slot, q);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    const PadicRational pq(q, s.characteristic());
    const TruncatedSeries root =
        frobenius(images[slot], -static_cast<long>(pq.denominatorExponent()));
    return powers.emplace(std::move(key), cappedPower(root, q.num(), limit)).first->second;
  };

  // Exact inputs built from monomial images stay exact; anything else is
  // capped at the limit.
  bool exact = s.precision().isExact();
  TruncatedSeries total(target);
  for (const auto& [e, c] : s.terms()) {
    TruncatedSeries term = TruncatedSeries::monomial(target, c, {e[0], Rat(0)});
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i].isZero()) continue;
      term = mul(term, factor(i - 1, e[i]));
      if (!term.precision().isExact()) term = capPrecision(term, limit);
    }
    if (!term.precision().isExact()) {
      exact = false;
      if (term.precision() < Precision::at(limit)) {
        throw Error(ErrorCode::PrecisionUnderflow,
                    "image of a monomial is known only to " + term.precision().str() +
                        ", below the requested " + limit.str());
      }
    }
    total = add(total, term);
  }
  return exact ? total : capPrecision(total, limit);
}

TateElement restrictVariables(const TateElement& f, const TateAlgebra& target) {
  const std::size_t k = target.variables();
  if (k > f.variables()) throw Error(ErrorCode::InvalidArgument, "cannot add variables");
  const TruncatedSeries& s = f.series();
  TruncatedSeries out(target.profile(), s.precision());
  for (const auto& [e, c] : s.terms()) {
    bool survives = true;
    for (std::size_t i = k + 1; i < e.size(); ++i) survives = survives && e[i].isZero();
    if (survives) out.addTerm(ExponentVec(e.begin(), e.begin() + static_cast<long>(k) + 1), c);
  }
  return TateElement(target, std::move(out));
}

}  // namespace hahn
