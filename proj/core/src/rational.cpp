#include "hahn/rational.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "hahn/errors.hpp"

namespace hahn {

const char* errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Format: return "FormatError";
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::AmbiguousLeading: return "AmbiguousLeading";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::PrecisionIncrease: return "PrecisionIncrease";
    case ErrorCode::IndeterminateFromPrecision: return "IndeterminateFromPrecision";
    case ErrorCode::Unresolved: return "Unresolved";
    case ErrorCode::PrecisionUnderflow: return "PrecisionUnderflow";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::AdaptednessFailed: return "AdaptednessFailed";
    case ErrorCode::StageUnavailable: return "StageUnavailable";
    case ErrorCode::ContractViolation: return "ContractViolation";
  }
  return "Error";
}

Rat::Rat(long n, long d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.isZero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool parseInteger(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') return false;
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  mpz_class n;
  mpz_class d = 1;
  const bool ok = slash == std::string_view::npos
                      ? parseInteger(text, n)
                      : parseInteger(text.substr(0, slash), n) &&
                            parseInteger(text.substr(slash + 1), d) && d > 0;
  if (!ok) throw Error(ErrorCode::Format, "malformed rational '" + std::string(text) + "'");
  return Rat(n, d);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

mpz_class intPow(unsigned p, unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

Rat ratPow(unsigned p, long k) {
  if (k >= 0) return Rat(intPow(p, static_cast<unsigned long>(k)), mpz_class(1));
  return Rat(mpz_class(1), intPow(p, static_cast<unsigned long>(-k)));
}

bool isPrime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool isInZp(const Rat& q, unsigned p) {
  mpz_class d = q.den();
  const mpz_class pz = p;
  while (mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t()) != 0) d /= pz;
  return d == 1;
}

PadicRational::PadicRational(Rat value, unsigned p) : value_(std::move(value)), p_(p) {
  if (!isInZp(value_, p_)) {
    throw Error(ErrorCode::InvalidArgument,
                value_.str() + " is not in Z[1/" + std::to_string(p_) + "]");
  }
}

unsigned PadicRational::denominatorExponent() const {
  mpz_class d = value_.den();
  unsigned k = 0;
  while (d > 1) {
    d /= p_;
    ++k;
  }
  return k;
}

OmegaEnumerator::OmegaEnumerator(unsigned p) : p_(p) {
  if (!isPrime(p)) throw Error(ErrorCode::InvalidArgument, "omega needs a prime");
}

// Collects every reduced i/p^m of height exactly height_ in emission order.
void OmegaEnumerator::fillHeight() {
  struct Key {
    unsigned m;
    mpz_class absNum;
    int negative;
    Rat value;
  };
  std::vector<Key> keys;
  const mpz_class h = height_;
  const mpz_class pz = p_;
  mpz_class pm = 1;
  for (unsigned m = 0; pm <= h; ++m, pm *= pz) {
    if (pm == h) {
      // Denominator attains the height: every admissible |i| <= h.
      for (mpz_class a = 0; a <= h; ++a) {
        if (m > 0 && mpz_divisible_p(a.get_mpz_t(), pz.get_mpz_t()) != 0) continue;
        if (m == 0 && a == 0) {
          keys.push_back({m, a, 0, Rat(0)});
          continue;
        }
        if (m == 0 && a != h) continue;  // integers of smaller height were emitted earlier
        keys.push_back({m, a, 0, Rat(a, pm)});
        keys.push_back({m, a, 1, Rat(mpz_class(-a), pm)});
      }
    } else {
      if (m > 0 && mpz_divisible_p(h.get_mpz_t(), pz.get_mpz_t()) != 0) continue;
      keys.push_back({m, h, 0, Rat(h, pm)});
      keys.push_back({m, h, 1, Rat(mpz_class(-h), pm)});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.m, a.absNum, a.negative) < std::tie(b.m, b.absNum, b.negative);
  });
  pending_.clear();
  for (auto& k : keys) pending_.push_back(std::move(k.value));
  cursor_ = 0;
}

PadicRational OmegaEnumerator::next() {
  while (cursor_ >= pending_.size()) {
    height_ += 1;
    fillHeight();
  }
  ++emitted_;
  return PadicRational(pending_[cursor_++], p_);
}

PadicRational omega(std::uint64_t m, unsigned p) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "omega is indexed from 1");
  OmegaEnumerator e(p);
  for (std::uint64_t i = 1; i < m; ++i) e.next();
  return e.next();
}

Rat simplestPadicIn(const Rat& lo, const Rat& hi, unsigned p) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rat(0);
  for (unsigned long d = 0;; ++d) {
    const mpz_class pd = intPow(p, d);
    // Closest-to-zero numerator strictly inside the scaled interval.
    const mpz_class num = lo.sign() >= 0 ? mpz_class(Rat(lo * Rat(pd, 1)).floor() + 1)
                                         : mpz_class(Rat(hi * Rat(pd, 1)).ceil() - 1);
    const Rat candidate(num, pd);
    if (lo < candidate && candidate < hi) return candidate;
  }
}

}  // namespace hahn
