#pragma once

// Seeded generators and naive reference implementations shared by the unit
// and acceptance suites.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hahn/series.hpp"
#include "hahn/tate.hpp"

namespace testsupport {

using hahn::Coeff;
using hahn::ExponentVec;
using hahn::Precision;
using hahn::ProfilePtr;
using hahn::Rat;
using hahn::TruncatedSeries;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(hi - lo + 1)); }
  bool coin() { return (rng_() & 1) != 0; }

  /// i / p^k with |i| <= span, k <= maxDen.
  Rat padic(unsigned p, long lo, long hi, unsigned maxDen) {
    const long den = static_cast<long>(hahn::intPow(p, below(maxDen + 1)).get_si());
    return Rat(range(lo * den, hi * den), den);
  }

  Coeff unit(unsigned p) { return static_cast<Coeff>(1 + below(p - 1)); }

  /// Random series: up to maxTerms terms with slot-0 exponents in [0, maxT),
  /// other slots in [-span, span] (or [0, span] when nonNegative), and a
  /// finite precision in (maxT, maxPrec] unless exact.
  TruncatedSeries series(const ProfilePtr& profile, std::size_t maxTerms, long maxT,
                         long maxPrec, long span = 3, bool nonNegative = false,
                         bool allowExact = true) {
    const unsigned p = profile->characteristic();
    Precision prec = Precision::exact();
    if (!allowExact || coin()) prec = Precision::at(padic(p, maxT, maxPrec, 1));
    TruncatedSeries f(profile, prec);
    const std::size_t n = below(maxTerms + 1);
    for (std::size_t i = 0; i < n; ++i) {
      ExponentVec e(profile->dimension());
      e[0] = padic(p, 0, maxT - 1, 2);
      for (std::size_t s = 1; s < e.size(); ++s) e[s] = padic(p, nonNegative ? 0 : -span, span, 2);
      f.addTerm(e, unit(p));
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline TruncatedSeries exactCopy(const TruncatedSeries& f) {
  TruncatedSeries out(f.profile());
  for (const auto& [e, c] : f.terms()) out.addTerm(e, c);
  return out;
}

inline ExponentVec plus(const ExponentVec& a, const ExponentVec& b) {
  ExponentVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Lowest stored weight, or the precision bound as a fallback for zero.
inline std::optional<Rat> lowestWeight(const TruncatedSeries& f) {
  std::optional<Rat> best;
  for (const auto& [e, c] : f.terms()) {
    const Rat w = f.weights().weightOf(e);
    if (!best || w < *best) best = w;
  }
  return best;
}

/// Schoolbook convolution with the precision contract
/// min(prec f + val g, prec g + val f), written without any pruning. The
/// valuation of a zero series is its precision; exact bounds are infinite.
inline TruncatedSeries schoolbookMul(const TruncatedSeries& f, const TruncatedSeries& g) {
  const unsigned p = f.characteristic();
  const auto valuationOf = [](const TruncatedSeries& s) -> std::optional<Rat> {
    if (const auto w = lowestWeight(s)) return w;
    if (s.precision().isExact()) return std::nullopt;
    return s.precision().bound();
  };
  const auto boundOf = [](const TruncatedSeries& a, const std::optional<Rat>& vb) -> std::optional<Rat> {
    if (a.precision().isExact() || !vb) return std::nullopt;
    return a.precision().bound() + *vb;
  };
  const auto b1 = boundOf(f, valuationOf(g));
  const auto b2 = boundOf(g, valuationOf(f));
  Precision prec = Precision::exact();
  if (b1 && b2) {
    prec = Precision::at(std::min(*b1, *b2));
  } else if (b1 || b2) {
    prec = Precision::at(b1 ? *b1 : *b2);
  }
  std::map<ExponentVec, std::uint64_t> acc;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      auto& slot = acc[plus(a, b)];
      slot = (slot + static_cast<std::uint64_t>(ca) * cb) % p;
    }
  }
  TruncatedSeries out(f.profile(), prec);
  for (const auto& [e, c] : acc) {
    if (c != 0 && !prec.excludes(f.weights().weightOf(e))) out.addTerm(e, static_cast<Coeff>(c));
  }
  return out;
}

}  // namespace testsupport
