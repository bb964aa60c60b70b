#pragma once

// Exact rationals, the p-adic-denominator subgroup Z[1/p], and the fixed
// enumeration of Z[1/p] used to order construction stages.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hahn {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long n, long d);
  Rat(const mpz_class& n, const mpz_class& d);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "num/den" or "num"; throws FormatError on anything else.
  static Rat parse(std::string_view text);

  /// Serialized form: "num/den", den omitted when 1.
  std::string str() const;

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool isZero() const { return sign() == 0; }
  bool isInteger() const { return v_.get_den() == 1; }

  mpz_class floor() const;
  mpz_class ceil() const;
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// p^k for any integer k (negative k gives 1/p^|k|).
Rat ratPow(unsigned p, long k);
mpz_class intPow(unsigned p, unsigned long k);

bool isPrime(unsigned long n);

/// True iff the reduced denominator of q is a power of p.
bool isInZp(const Rat& q, unsigned p);

/// An element of Z[1/p] for a fixed prime p.
class PadicRational {
 public:
  /// Throws InvalidArgument when the denominator is not a power of p.
  PadicRational(Rat value, unsigned p);

  const Rat& value() const { return value_; }
  unsigned prime() const { return p_; }
  /// Exponent k with denominator == p^k.
  unsigned denominatorExponent() const;

  friend bool operator==(const PadicRational& a, const PadicRational& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

 private:
  Rat value_;
  unsigned p_;
};

/// Streams the fixed bijection N+ -> Z[1/p]: reduced fractions i/p^m ordered
/// by height max(|i|, p^m), then smaller m, then smaller |i|, then positive
/// before negative. The first value is 0.
class OmegaEnumerator {
 public:
  explicit OmegaEnumerator(unsigned p);

  /// Value at the current position, then advances.
  PadicRational next();
  /// 1-based index of the value the next call to next() returns.
  std::uint64_t position() const { return emitted_ + 1; }

 private:
  void fillHeight();

  unsigned p_;
  mpz_class height_ = 0;
  std::vector<Rat> pending_;
  std::size_t cursor_ = 0;
  std::uint64_t emitted_ = 0;
};

/// omega(m) for m >= 1. Linear in m; use OmegaEnumerator for long prefixes.
PadicRational omega(std::uint64_t m, unsigned p);

/// The element of Z[1/p] strictly inside (lo, hi) with the smallest
/// denominator, then the smallest |numerator|, positive first on ties.
/// Requires lo < hi.
Rat simplestPadicIn(const Rat& lo, const Rat& hi, unsigned p);

}  // namespace hahn
