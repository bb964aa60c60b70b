#include "hahn/series.hpp"

#include <algorithm>
#include <sstream>

#include "hahn/errors.hpp"

namespace hahn {

Coeff fpAdd(Coeff a, Coeff b, unsigned p) { return static_cast<Coeff>((a + b) % p); }
Coeff fpNeg(Coeff a, unsigned p) { return a == 0 ? 0 : static_cast<Coeff>(p - a); }
Coeff fpMul(Coeff a, Coeff b, unsigned p) {
  return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p);
}
Coeff fpInv(Coeff a, unsigned p) {
  if (a % p == 0) throw Error(ErrorCode::NotAUnit, "zero coefficient");
  // a^(p-2) by Fermat.
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (unsigned e = p - 2; e > 0; e >>= 1) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<Coeff>(result);
}

WeightProfile::WeightProfile(unsigned p, std::vector<Rat> weights, std::vector<std::string> names)
    : p_(p), weights_(std::move(weights)), names_(std::move(names)) {
  if (!isPrime(p_)) throw Error(ErrorCode::InvalidArgument, "characteristic must be prime");
  if (weights_.empty() || weights_[0] != Rat(1)) {
    throw Error(ErrorCode::InvalidArgument, "uniformizer weight must be 1");
  }
  if (names_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidArgument, "one name per profile slot");
  }
  for (const auto& w : weights_) {
    if (w.sign() < 0) throw Error(ErrorCode::InvalidArgument, "weights must be >= 0");
  }
  uniqueLeading_ = weights_.size() == 1 || (weights_.size() == 2 && !isInZp(weights_[1], p_));
}

Rat WeightProfile::weightOf(const ExponentVec& e) const {
  Rat w = e.at(0);
  for (std::size_t i = 1; i < weights_.size(); ++i) {
    if (!weights_[i].isZero() && !e[i].isZero()) w += e[i] * weights_[i];
  }
  return w;
}

ProfilePtr makeProfile(unsigned p, std::vector<Rat> weights, std::vector<std::string> names) {
  return std::make_shared<const WeightProfile>(p, std::move(weights), std::move(names));
}

const Rat& Precision::bound() const {
  if (!bound_) throw Error(ErrorCode::InvalidArgument, "exact precision has no bound");
  return *bound_;
}

Precision Precision::shifted(const Rat& by) const {
  return bound_ ? Precision(*bound_ + by) : Precision();
}

Precision Precision::scaled(const Rat& positiveFactor) const {
  return bound_ ? Precision(*bound_ * positiveFactor) : Precision();
}

Precision Precision::min(const Precision& a, const Precision& b) { return a < b ? a : b; }

bool operator<(const Precision& a, const Precision& b) {
  if (!a.bound_) return false;
  if (!b.bound_) return true;
  return *a.bound_ < *b.bound_;
}

namespace {

void requireSameProfile(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.profile() != g.profile() && !(f.weights() == g.weights())) {
    throw Error(ErrorCode::ProfileMismatch, "series over different profiles");
  }
}

// a + b where either side may be unbounded.
Precision sumOf(const Precision& a, const Precision& b) {
  if (a.isExact() || b.isExact()) return Precision::exact();
  return Precision::at(a.bound() + b.bound());
}

struct WeightedTerm {
  Rat weight;
  const ExponentVec* exponent;
  Coeff coeff;
};

std::vector<WeightedTerm> byWeight(const TruncatedSeries& f) {
  std::vector<WeightedTerm> out;
  out.reserve(f.size());
  for (const auto& [e, c] : f.terms()) out.push_back({f.weights().weightOf(e), &e, c});
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight < b.weight; });
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries(ProfilePtr profile, Precision precision)
    : profile_(std::move(profile)), precision_(std::move(precision)) {
  if (!profile_) throw Error(ErrorCode::InvalidArgument, "null profile");
}

TruncatedSeries TruncatedSeries::zero(ProfilePtr profile, Precision precision) {
  return TruncatedSeries(std::move(profile), std::move(precision));
}

TruncatedSeries TruncatedSeries::one(ProfilePtr profile) {
  ExponentVec e(profile->dimension(), Rat(0));
  return monomial(std::move(profile), 1, std::move(e));
}

TruncatedSeries TruncatedSeries::monomial(ProfilePtr profile, Coeff c, ExponentVec e,
                                          Precision precision) {
  if (e.size() != profile->dimension()) {
    throw Error(ErrorCode::InvalidArgument, "exponent vector has wrong dimension");
  }
  TruncatedSeries s(std::move(profile), std::move(precision));
  s.addTerm(e, c);
  return s;
}

void TruncatedSeries::addTerm(const ExponentVec& e, Coeff c) {
  const unsigned p = characteristic();
  c %= p;
  if (c == 0) return;
  if (precision_.excludes(profile_->weightOf(e))) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = fpAdd(it->second, c, p);
    if (it->second == 0) terms_.erase(it);
  }
}

Precision TruncatedSeries::valuationBound() const {
  if (terms_.empty()) return precision_;
  Rat best = profile_->weightOf(terms_.begin()->first);
  for (const auto& [e, c] : terms_) best = std::min(best, profile_->weightOf(e));
  return Precision::at(best);
}

Coeff TruncatedSeries::coefficient(const ExponentVec& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<std::pair<ExponentVec, Coeff>> TruncatedSeries::orderedTerms() const {
  std::vector<std::pair<Rat, std::pair<ExponentVec, Coeff>>> keyed;
  keyed.reserve(terms_.size());
  for (const auto& [e, c] : terms_) keyed.push_back({profile_->weightOf(e), {e, c}});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.first < b.second.first;
  });
  std::vector<std::pair<ExponentVec, Coeff>> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.weights() == b.weights() && a.terms_ == b.terms_ && a.precision_ == b.precision_;
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  requireSameProfile(f, g);
  TruncatedSeries out(f.profile(), Precision::min(f.precision(), g.precision()));
  for (const auto& [e, c] : f.terms()) out.addTerm(e, c);
  for (const auto& [e, c] : g.terms()) out.addTerm(e, c);
  return out;
}

TruncatedSeries negate(const TruncatedSeries& f) {
  TruncatedSeries out(f.profile(), f.precision());
  for (const auto& [e, c] : f.terms()) out.addTerm(e, fpNeg(c, f.characteristic()));
  return out;
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, negate(g)); }

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  requireSameProfile(f, g);
  const Precision prec = Precision::min(sumOf(f.precision(), g.valuationBound()),
                                        sumOf(g.precision(), f.valuationBound()));
  TruncatedSeries out(f.profile(), prec);
  const unsigned p = f.characteristic();
  const auto fs = byWeight(f);
  const auto gs = byWeight(g);
  const std::size_t dim = f.weights().dimension();
  ExponentVec e(dim);
  for (const auto& a : fs) {
    for (const auto& b : gs) {
      // g is sorted by weight, so every later product is excluded as well.
      if (prec.excludes(a.weight + b.weight)) break;
      for (std::size_t i = 0; i < dim; ++i) e[i] = (*a.exponent)[i] + (*b.exponent)[i];
      out.addTerm(e, fpMul(a.coeff, b.coeff, p));
    }
  }
  return out;
}

TruncatedSeries mulMonomial(const TruncatedSeries& f, Coeff c, const ExponentVec& e) {
  const unsigned p = f.characteristic();
  if (c % p == 0) {
    throw Error(ErrorCode::InvalidArgument, "monomial multiplier must have nonzero coefficient");
  }
  const Rat w = f.weights().weightOf(e);
  TruncatedSeries out(f.profile(), f.precision().shifted(w));
  ExponentVec shifted(e.size());
  for (const auto& [fe, fc] : f.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = fe[i] + e[i];
    out.addTerm(shifted, fpMul(fc, c, p));
  }
  return out;
}

TruncatedSeries power(const TruncatedSeries& f, const mpz_class& n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  if (n == 0) return TruncatedSeries::one(f.profile());
  if (f.size() == 1 && f.precision().isExact()) {
    // Single exact term: closed form.
    const auto& [e, c] = *f.terms().begin();
    ExponentVec scaled(e.size());
    const Rat nr(n, mpz_class(1));
    for (std::size_t i = 0; i < e.size(); ++i) scaled[i] = e[i] * nr;
    const unsigned p = f.characteristic();
    mpz_class r;
    const mpz_class cz = c;
    const mpz_class pz = p;
    mpz_powm(r.get_mpz_t(), cz.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    return TruncatedSeries::monomial(f.profile(), static_cast<Coeff>(r.get_ui()), scaled);
  }
  TruncatedSeries result = TruncatedSeries::one(f.profile());
  TruncatedSeries base = f;
  mpz_class k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t()) != 0) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

std::optional<Leading> valuationAndLeading(const TruncatedSeries& f) {
  if (f.isZero()) return std::nullopt;
  const WeightProfile& prof = f.weights();
  const ExponentVec* bestE = nullptr;
  Coeff bestC = 0;
  Rat bestW;
  bool tie = false;
  for (const auto& [e, c] : f.terms()) {
    Rat w = prof.weightOf(e);
    if (bestE == nullptr || w < bestW) {
      bestE = &e;
      bestC = c;
      bestW = std::move(w);
      tie = false;
    } else if (w == bestW) {
      tie = true;
    }
  }
  if (tie && prof.uniqueLeading()) {
    throw Error(ErrorCode::AmbiguousLeading, "two terms attain valuation " + bestW.str());
  }
  return Leading{bestW, *bestE, bestC};
}

TruncatedSeries truncate(const TruncatedSeries& f, const Rat& newPrec) {
  if (Precision::at(newPrec) == f.precision()) return f;
  if (f.precision() < Precision::at(newPrec)) {
    throw Error(ErrorCode::PrecisionIncrease,
                "cannot raise precision " + f.precision().str() + " to " + newPrec.str());
  }
  TruncatedSeries out(f.profile(), Precision::at(newPrec));
  for (const auto& [e, c] : f.terms()) out.addTerm(e, c);
  return out;
}

TruncatedSeries capPrecision(const TruncatedSeries& f, const Rat& newPrec) {
  if (f.precision() < Precision::at(newPrec)) return f;
  return truncate(f, newPrec);
}

TruncatedSeries invert(const TruncatedSeries& f, const Rat& targetPrec) {
  const auto lead = valuationAndLeading(f);
  if (!lead) throw Error(ErrorCode::NotAUnit, "cannot invert a zero series");
  const WeightProfile& prof = f.weights();
  for (const auto& [e, c] : f.terms()) {
    if (e != lead->exponent && prof.weightOf(e) == lead->valuation) {
      throw Error(ErrorCode::AmbiguousLeading, "leading term is not unique; not a unit");
    }
  }
  const Rat& v = lead->valuation;
  if (!f.precision().isExact() && f.precision().bound() - v - v < targetPrec) {
    throw Error(ErrorCode::InsufficientPrecision,
                "precision " + f.precision().str() + " determines the inverse only below " +
                    Rat(f.precision().bound() - v - v).str());
  }
  const unsigned p = f.characteristic();
  ExponentVec invExp(lead->exponent.size());
  for (std::size_t i = 0; i < invExp.size(); ++i) invExp[i] = -lead->exponent[i];
  const Coeff invCoeff = fpInv(lead->coeff, p);

  // f = L (1 + u) with val(u) > 0; 1/(1+u) = sum (-u)^k to precision target + v.
  const Rat inner = targetPrec + v;
  TruncatedSeries one = TruncatedSeries::one(f.profile());
  TruncatedSeries u = capPrecision(sub(mulMonomial(f, invCoeff, invExp), one), inner);
  TruncatedSeries minusU = negate(u);
  TruncatedSeries sum = capPrecision(one, inner);
  TruncatedSeries term = sum;
  while (true) {
    term = capPrecision(mul(term, minusU), inner);
    if (term.isZero()) break;
    sum = add(sum, term);
  }
  return capPrecision(mulMonomial(sum, invCoeff, invExp), targetPrec);
}

TruncatedSeries frobenius(const TruncatedSeries& f, long k) {
  if (k == 0) return f;
  const unsigned p = f.characteristic();
  const Rat factor = ratPow(p, k);
  TruncatedSeries out(f.profile(), f.precision().scaled(factor));
  ExponentVec scaled;
  for (const auto& [e, c] : f.terms()) {
    scaled.assign(e.begin(), e.end());
    for (auto& x : scaled) x *= factor;
    // x -> x^p is the identity on F_p.
    out.addTerm(scaled, c);
  }
  return out;
}

std::string toText(const TruncatedSeries& f) {
  std::ostringstream os;
  const auto& names = f.weights().names();
  for (const auto& [e, c] : f.orderedTerms()) {
    os << c << ' ' << names[0] << '^' << e[0].str();
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (!e[i].isZero()) os << ' ' << names[i] << '^' << e[i].str();
    }
    os << '\n';
  }
  os << "O(" << f.precision().str() << ")\n";
  return os.str();
}

TruncatedSeries parseSeries(std::string_view text, ProfilePtr profile) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<ExponentVec, Coeff>> terms;
  std::optional<Precision> precision;
  const auto& names = profile->names();
  const unsigned p = profile->characteristic();
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::Format, "line " + std::to_string(lineNo) + ": " + why);
    };
    if (precision) throw fail("content after the O(...) line");
    if (tok.rfind("O(", 0) == 0) {
      if (tok.back() != ')') throw fail("malformed precision");
      const std::string inner = tok.substr(2, tok.size() - 3);
      precision = inner == "inf" ? Precision::exact() : Precision::at(Rat::parse(inner));
      if (tokens >> tok) throw fail("trailing tokens after precision");
      continue;
    }
    mpz_class cz;
    if (cz.set_str(tok, 10) != 0 || cz <= 0 || cz >= p) throw fail("coefficient must be in 1.." +
                                                                    std::to_string(p - 1));
    ExponentVec e(profile->dimension(), Rat(0));
    std::vector<bool> seen(e.size(), false);
    while (tokens >> tok) {
      const auto caret = tok.find('^');
      if (caret == std::string::npos) throw fail("expected name^exponent, got '" + tok + "'");
      const std::string name = tok.substr(0, caret);
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw fail("unknown variable '" + name + "'");
      const auto slot = static_cast<std::size_t>(it - names.begin());
      if (seen[slot]) throw fail("variable '" + name + "' repeated");
      seen[slot] = true;
      e[slot] = Rat::parse(tok.substr(caret + 1));
    }
    if (!seen[0]) throw fail("missing " + names[0] + " exponent");
    terms.emplace_back(std::move(e), static_cast<Coeff>(cz.get_ui()));
  }
  if (!precision) throw Error(ErrorCode::Format, "missing O(...) precision line");
  TruncatedSeries out(std::move(profile), *precision);
  for (const auto& [e, c] : terms) {
    if (out.precision().excludes(out.weights().weightOf(e))) {
      throw Error(ErrorCode::Format, "term at or above the precision bound");
    }
    if (out.coefficient(e) != 0) throw Error(ErrorCode::Format, "duplicate term");
    out.addTerm(e, c);
  }
  return out;
}

}  // namespace hahn
