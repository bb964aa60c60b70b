#pragma once

// Truncated generalized power series over F_p with rational exponents.
//
// A series is a finite map from exponent vectors to nonzero coefficients
// together with a precision bound P. It stands for every true series whose
// terms of weight < P are exactly the stored ones; everything it omits has
// weight >= P. Weights come from a WeightProfile: slot 0 is the ground
// uniformizer t with weight 1, slots 1..d are variables with rational
// weights (the additive radius parameters -log r).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hahn/rational.hpp"

namespace hahn {

using Coeff = std::uint32_t;
using ExponentVec = std::vector<Rat>;

class WeightProfile {
 public:
  /// names[0] is the uniformizer; weights[0] must be 1 and all weights >= 0.
  WeightProfile(unsigned p, std::vector<Rat> weights, std::vector<std::string> names);

  unsigned characteristic() const { return p_; }
  std::size_t dimension() const { return weights_.size(); }
  const Rat& weight(std::size_t slot) const { return weights_.at(slot); }
  const std::vector<Rat>& weights() const { return weights_; }
  const std::vector<std::string>& names() const { return names_; }

  Rat weightOf(const ExponentVec& e) const;

  /// The Type III regime: one variable whose weight lies outside Z[1/p], so
  /// (a, q) -> a + q*w is injective on Z[1/p]^2 and leading terms are unique.
  bool uniqueLeading() const { return uniqueLeading_; }

  friend bool operator==(const WeightProfile& a, const WeightProfile& b) {
    return a.p_ == b.p_ && a.weights_ == b.weights_ && a.names_ == b.names_;
  }

 private:
  unsigned p_;
  std::vector<Rat> weights_;
  std::vector<std::string> names_;
  bool uniqueLeading_;
};

using ProfilePtr = std::shared_ptr<const WeightProfile>;

ProfilePtr makeProfile(unsigned p, std::vector<Rat> weights, std::vector<std::string> names);

/// A precision bound, or EXACT (no truncation).
class Precision {
 public:
  static Precision exact() { return Precision(); }
  static Precision at(Rat bound) { return Precision(std::move(bound)); }

  bool isExact() const { return !bound_.has_value(); }
  /// Throws when exact.
  const Rat& bound() const;

  /// True iff a term of weight w must be dropped.
  bool excludes(const Rat& w) const { return bound_ && !(w < *bound_); }

  Precision shifted(const Rat& by) const;
  Precision scaled(const Rat& positiveFactor) const;
  static Precision min(const Precision& a, const Precision& b);

  std::string str() const { return bound_ ? bound_->str() : "inf"; }

  friend bool operator==(const Precision& a, const Precision& b) { return a.bound_ == b.bound_; }
  /// Exact compares above every bound.
  friend bool operator<(const Precision& a, const Precision& b);

 private:
  Precision() = default;
  explicit Precision(Rat b) : bound_(std::move(b)) {}
  std::optional<Rat> bound_;
};

struct Leading {
  Rat valuation;
  ExponentVec exponent;
  Coeff coeff;
};

class TruncatedSeries {
 public:
  using TermMap = std::map<ExponentVec, Coeff>;

  explicit TruncatedSeries(ProfilePtr profile, Precision precision = Precision::exact());

  static TruncatedSeries zero(ProfilePtr profile, Precision precision = Precision::exact());
  static TruncatedSeries one(ProfilePtr profile);
  static TruncatedSeries monomial(ProfilePtr profile, Coeff c, ExponentVec e,
                                  Precision precision = Precision::exact());

  /// Accumulates c * e, reducing mod p; terms excluded by the precision are
  /// ignored and cancelled terms are erased.
  void addTerm(const ExponentVec& e, Coeff c);

  const ProfilePtr& profile() const { return profile_; }
  const WeightProfile& weights() const { return *profile_; }
  const TermMap& terms() const { return terms_; }
  const Precision& precision() const { return precision_; }
  unsigned characteristic() const { return profile_->characteristic(); }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Exact valuation when nonzero; for the empty series, the precision
  /// bound (the value is only known to be >= it). Exact zero has no bound.
  Precision valuationBound() const;

  /// Coefficient at e, 0 when absent.
  Coeff coefficient(const ExponentVec& e) const;

  /// Terms sorted by (weight, exponent vector).
  std::vector<std::pair<ExponentVec, Coeff>> orderedTerms() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  ProfilePtr profile_;
  TermMap terms_;
  Precision precision_;
};

// Operations. All are pure; mixing profiles throws ProfileMismatch.

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries negate(const TruncatedSeries& f);
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
/// c * t^a * x^q... times f, with the precision shifted by the monomial weight.
TruncatedSeries mulMonomial(const TruncatedSeries& f, Coeff c, const ExponentVec& e);
/// Nonnegative integer power by repeated squaring.
TruncatedSeries power(const TruncatedSeries& f, const mpz_class& n);

/// Minimal-weight term, or nullopt for the empty series. Throws
/// AmbiguousLeading if two terms share the minimum under a unique-leading
/// profile; otherwise ties resolve to the lexicographically first exponent.
std::optional<Leading> valuationAndLeading(const TruncatedSeries& f);

/// g with f*g = 1 up to targetPrec. The output has precision targetPrec,
/// which must not exceed prec(f) - 2 val(f).
TruncatedSeries invert(const TruncatedSeries& f, const Rat& targetPrec);

/// Raises to the p^k-th power (k may be negative): exponents and precision
/// scale by p^k, coefficients are fixed by Frobenius on F_p.
TruncatedSeries frobenius(const TruncatedSeries& f, long k);

/// Drops terms of weight >= newPrec. Throws PrecisionIncrease if newPrec
/// exceeds the current precision.
TruncatedSeries truncate(const TruncatedSeries& f, const Rat& newPrec);
/// truncate() to min(newPrec, current precision).
TruncatedSeries capPrecision(const TruncatedSeries& f, const Rat& newPrec);

/// Text form: one "<coeff> t^<rat> [x^<rat> ...]" line per term, ordered by
/// weight, then "O(<rat>)" (or "O(inf)" for exact).
std::string toText(const TruncatedSeries& f);
TruncatedSeries parseSeries(std::string_view text, ProfilePtr profile);

// F_p helpers.
Coeff fpAdd(Coeff a, Coeff b, unsigned p);
Coeff fpNeg(Coeff a, unsigned p);
Coeff fpMul(Coeff a, Coeff b, unsigned p);
Coeff fpInv(Coeff a, unsigned p);

}  // namespace hahn
