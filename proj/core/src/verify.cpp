#include "hahn/verify.hpp"

#include <map>
#include <optional>
#include <set>

#include "hahn/errors.hpp"
#include "hahn/formats.hpp"
#include "hahn/series.hpp"
#include "json.hpp"

namespace hahn {

namespace {

using Json = nlohmann::ordered_json;

struct Row {
  std::size_t m = 0;
  Rat q;
  Rat vE;
  unsigned long b = 0;
  Rat vEps;
  std::string origin;
};

Rat ratField(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(ErrorCode::Format, std::string("missing rational field '") + key + "'");
  }
  return Rat::parse(obj.at(key).get<std::string>());
}

std::string strField(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(ErrorCode::Format, std::string("missing string field '") + key + "'");
  }
  return obj.at(key).get<std::string>();
}

unsigned long uintField(const Json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_unsigned()) {
    throw Error(ErrorCode::Format, std::string("missing integer field '") + key + "'");
  }
  return obj.at(key).get<unsigned long>();
}

unsigned denExponent(const Rat& x, unsigned p) {
  mpz_class d = x.den();
  unsigned k = 0;
  while (d > 1) {
    d /= p;
    ++k;
  }
  return k;
}

// x is the point of Z[1/p] in (lo, hi) of least denominator, then least
// |numerator|.
bool isSimplestPoint(const Rat& x, const Rat& lo, const Rat& hi, unsigned p) {
  if (!(lo < x && x < hi) || !isInZp(x, p)) return false;
  const unsigned k = denExponent(x, p);
  for (unsigned d = 0; d < k; ++d) {
    const Rat scale = ratPow(p, d);
    if (Rat(Rat(lo * scale).floor() + 1, mpz_class(1)) < hi * scale) return false;
  }
  const Rat unit = ratPow(p, -static_cast<long>(k));
  if (x.sign() > 0) return !(lo < x - unit);
  if (x.sign() < 0) return !(x + unit < hi);
  return true;
}

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}

  void instance(const Json& inst) {
    p_ = static_cast<unsigned>(uintField(inst, "p"));
    gamma_ = ratField(inst, "gamma_x");
    vS_ = ratField(inst, "v_s");
    workPrec_ = ratField(inst, "work_prec");
    vC_ = ratField(inst, "v_c");
    expect("instance", isPrime(p_) && p_ % 2 == 1, "p must be an odd prime");
    expect("instance", gamma_.sign() > 0 && !isInZp(gamma_, p_), "gamma_x must be positive, outside Z[1/p]");
    expect("instance", vS_.sign() > 0 && vS_ < Rat(1), "v_s must lie in (0, 1)");
    expect("instance", isSimplestPoint(vC_, gamma_, gamma_ + vS_, p_),
           "v(c) = " + vC_.str() + " is not the chosen point of (gamma_x, gamma_x + v_s)");
    if (report_.ok()) {
      residue_ = makeProfile(p_, {Rat(1), gamma_}, {"t", "x"});
      tate_ = makeProfile(p_, {Rat(1), Rat(0), Rat(0), Rat(0)}, {"t", "x1", "x2", "x3"});
    }
  }

  // Returns false when a stage fails; rows after the first failure are not
  // meaningful and are skipped so the diagnostic points at the mutated stage.
  bool stages(const Json& rows) {
    if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::Format, "stages must be a nonempty array");
    OmegaEnumerator omega(p_);
    std::set<Rat> used;
    for (const auto& r : rows) {
      Row row;
      row.m = uintField(r, "m");
      row.q = ratField(r, "omega");
      row.vE = ratField(r, "v_e");
      row.b = uintField(r, "b");
      row.vEps = ratField(r, "v_eps");
      row.origin = strField(r, "origin");
      const std::size_t before = report_.findings.size();
      checkRow(row, omega, used);
      rows_.push_back(row);
      used.insert(row.q);
      if (report_.findings.size() != before) return false;
    }
    return true;
  }

  Rat tailBound() const {
    const Rat byIndex(static_cast<long>(rows_.size() + 1));
    const Rat byGrowth = ratPow(p_, static_cast<long>(rows_.back().b)) * (Rat(1) + vS_);
    return std::max(byIndex, byGrowth);
  }

  TruncatedSeries alpha() const {
    TruncatedSeries a(residue_, Precision::at(tailBound()));
    for (const auto& r : rows_) {
      const Rat scale = ratPow(p_, static_cast<long>(r.b));
      a.addTerm({scale * r.vE, scale * r.q}, 1);
    }
    return a;
  }

  Rat offset(const Row& r) const {
    const Rat scale = ratPow(p_, static_cast<long>(r.b));
    return r.q.sign() >= 0 ? scale * r.vE : scale * (r.vE - r.q.abs() * vC_);
  }

  // x1 -> x, x2 -> t^vC x^-1, x3 -> alpha, every product capped at `cap`.
  TruncatedSeries evaluate(const TruncatedSeries& f, const Rat& cap) {
    const TruncatedSeries a = alpha();
    TruncatedSeries total(residue_, Precision::at(cap));
    std::map<Rat, TruncatedSeries> alphaPowers;
    for (const auto& [e, c] : f.terms()) {
      TruncatedSeries term = TruncatedSeries::monomial(
          residue_, c, {e[0] + e[2] * vC_, e[1] - e[2]}, Precision::at(cap));
      if (!e[3].isZero()) {
        auto it = alphaPowers.find(e[3]);
        if (it == alphaPowers.end()) {
          TruncatedSeries root = frobenius(a, -static_cast<long>(denExponent(e[3], p_)));
          TruncatedSeries acc = TruncatedSeries::one(residue_);
          for (mpz_class n = e[3].num(); n > 0; --n) acc = capPrecision(mul(acc, root), cap);
          it = alphaPowers.emplace(e[3], acc).first;
        }
        term = capPrecision(mul(term, it->second), cap);
      }
      total = add(total, term);
    }
    if (!f.precision().isExact()) total = capPrecision(total, f.precision().bound());
    return total;
  }

  // Stage m's adapted element, rebuilt from the rows.
  void certificate(const Json& summary, const std::string& where,
                   const std::optional<Json>& full) {
    const std::size_t m = uintField(summary, "m");
    if (m == 0 || m > rows_.size()) {
      fail(where, "refers to a missing stage");
      return;
    }
    const Row& row = rows_[m - 1];
    expect(where, ratField(summary, "q") == row.q, "q does not match stage " + std::to_string(m));

    TruncatedSeries power(tate_);
    power.addTerm({row.vEps, Rat(0), Rat(0), Rat(1)}, 1);
    std::vector<Rat> quotients;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const Row& prev = rows_[j];
      const Rat w = ratPow(p_, static_cast<long>(prev.b)) * prev.q.abs();
      const Rat vd = row.vEps + offset(prev);
      quotients.push_back(vd);
      expect(where, vd.sign() >= 0, "d_" + std::to_string(j + 1) + " has negative valuation");
      power.addTerm({vd, prev.q.sign() > 0 ? w : Rat(0), prev.q.sign() < 0 ? w : Rat(0), Rat(0)},
                    p_ - 1);
    }
    const TruncatedSeries preimage = frobenius(power, -static_cast<long>(row.b));
    const Precision gauss = preimage.valuationBound();
    expect(where, gauss.isExact() || gauss.bound().sign() >= 0, "preimage is not integral");

    const Rat resolution = (row.vEps + tailBound()) * ratPow(p_, -static_cast<long>(row.b));
    const Rat cap = std::min(workPrec_, resolution);
    const Rat target = Rat(1) + vS_;
    if (cap < target) {
      fail(where, "stage resolved only to " + cap.str());
      return;
    }
    const TruncatedSeries image = evaluate(preimage, cap);
    const auto terms = image.orderedTerms();
    if (terms.empty()) {
      fail(where, "image vanishes");
      return;
    }
    const auto& [leadE, leadC] = terms.front();
    const Rat v = image.weights().weightOf(leadE);
    const Rat residual = terms.size() > 1 ? image.weights().weightOf(terms[1].first) : cap;
    expect(where, v.sign() >= 0 && v < vS_, "s < |f(a)| <= 1 fails: v = " + v.str());
    expect(where, leadE[1] == row.q, "leading monomial has x-exponent " + leadE[1].str());
    expect(where, !(residual < target), "|f(a) - lead| <= s|t| fails: v = " + residual.str());
    expect(where, residual != v, "leading monomial is not unique");
    expect(where, ratField(summary, "image_valuation") == v, "recorded image valuation differs");
    expect(where, ratField(summary, "lead_t") == leadE[0], "recorded leading t-exponent differs");
    expect(where, ratField(summary, "residual_bound") == residual, "recorded residual bound differs");
    if (full) {
      expect(where, parseSeries(strField(*full, "preimage"), tate_) == preimage,
             "recorded preimage differs");
      expect(where, parseSeries(strField(*full, "image"), residue_) == image,
             "recorded image differs");
      expect(where, uintField(*full, "lead_coeff") == leadC, "recorded leading coefficient differs");
    }
  }

  void trace(const Json& doc) {
    const TruncatedSeries target = parseSeries(strField(doc, "target"), residue_);
    const auto v0 = target.valuationBound();
    expect("target", v0.isExact() || !(v0.bound() < vS_), "target is not normalized");
    const Json& steps = doc.at("steps");
    if (!steps.is_array()) throw Error(ErrorCode::Format, "steps must be an array");
    expect("header", uintField(doc, "steps_requested") == steps.size(), "step count mismatch");

    TruncatedSeries beta = target;
    TruncatedSeries a(tate_);
    std::size_t index = 0;
    for (const auto& s : steps) {
      const std::string where = "step " + std::to_string(index);
      const std::size_t before = report_.findings.size();
      const Rat m(static_cast<long>(index));
      const Rat bound = m + Rat(1) + vS_;
      expect(where, uintField(s, "m") == index, "steps out of order");
      expect(where, ratField(s, "certified_bound") == bound, "certified bound is not m + 1 + vS");

      TruncatedSeries band(residue_);
      for (const auto& [e, c] : beta.terms()) {
        const Rat w = residue_->weightOf(e);
        if (!(w < m + vS_) && w < bound) band.addTerm(e, c);
      }
      expect(where, parseSeries(strField(s, "slice"), residue_) == band, "slice is not the band");

      const TruncatedSeries e = parseSeries(strField(s, "e"), tate_);
      const Precision ge = e.valuationBound();
      expect(where, ge.isExact() || !(ge.bound() < m), "|a_(m+1) - a_m| > |t|^m");
      a = add(a, e);
      expect(where, parseSeries(strField(s, "a_next"), tate_) == a, "a_(m+1) != a_m + e_m");

      const TruncatedSeries next = parseSeries(strField(s, "beta_next"), residue_);
      const Precision vb = next.valuationBound();
      const Rat observed = vb.isExact() ? workPrec_ : vb.bound();
      expect(where, !(observed < bound), "v(beta_(m+1)) = " + observed.str() + " below " + bound.str());
      expect(where, ratField(s, "residual_valuation") == observed, "recorded residual valuation differs");
      expect(where, sub(add(evaluate(a, workPrec_), next), target).isZero(),
             "f(a_(m+1)) + beta_(m+1) != beta");
      beta = next;
      ++index;
      if (report_.findings.size() != before) return;
    }
    expect("final", parseSeries(strField(doc, "a_final"), tate_) == a, "a_final differs from a_M");
    const TruncatedSeries diff = sub(evaluate(a, workPrec_), target);
    const Precision vd = diff.valuationBound();
    const Rat finalBound = vd.isExact() ? workPrec_ : vd.bound();
    const Rat required = Rat(static_cast<long>(steps.size())) + vS_;
    expect("final", !(finalBound < required), "v(f(a_M) - beta) = " + finalBound.str());
    expect("final", ratField(doc, "final_residual_valuation") == finalBound,
           "recorded final residual valuation differs");
  }

  void expect(const std::string& where, bool ok, const std::string& what) {
    ++report_.checks;
    if (!ok) fail(where, what);
  }
  void fail(const std::string& where, const std::string& what) {
    report_.findings.push_back({where, what});
  }

 private:
  void checkRow(const Row& row, OmegaEnumerator& omega, const std::set<Rat>& used) {
    const std::string where = "stage " + std::to_string(rows_.size() + 1);
    expect(where, row.m == rows_.size() + 1, "stage index out of sequence");
    expect(where, isInZp(row.q, p_) && used.count(row.q) == 0, "exponent repeated or not in Z[1/p]");
    if (row.origin == "enumeration" || row.origin == "lookahead") {
      Rat next = omega.next().value();
      while (used.count(next) != 0) next = omega.next().value();
      expect(where, next == row.q, "expected the next omega value " + next.str());
    } else {
      expect(where, row.origin == "demand", "unknown origin '" + row.origin + "'");
    }

    const Rat shift = row.q * gamma_;
    const Rat value = row.vE + shift;
    expect(where, isSimplestPoint(row.vE, -shift, -shift + vS_, p_),
           "v(e) = " + row.vE.str() + " is not the chosen point with s < |e x^q| < 1");

    Rat vEps(0);
    for (const auto& prev : rows_) vEps = std::max(vEps, -offset(prev));
    expect(where, row.vEps == vEps,
           "v(eps) = " + row.vEps.str() + " but divisibility requires exactly " + vEps.str());

    if (row.m == 1 || rows_.empty()) {
      expect(where, row.b == 0, "b_1 must be 0");
      return;
    }
    const auto admissible = [&](unsigned long b) {
      const Rat scale = ratPow(p_, static_cast<long>(b));
      if (!(Rat(static_cast<long>(row.m)) < scale * value)) return false;  // weight above m
      const Rat lead = row.vEps / scale + value;
      if (!(lead.sign() > 0 && lead < vS_)) return false;  // leading value
      for (const auto& prev : rows_) {                     // growth over earlier stages
        if (b <= prev.b) return false;
        if (!(Rat(1) + vS_ < ratPow(p_, static_cast<long>(b - prev.b)) * value)) return false;
      }
      return true;
    };
    expect(where, admissible(row.b), "b = " + std::to_string(row.b) + " violates the stage constraints");
    expect(where, row.b == 0 || !admissible(row.b - 1),
           "b = " + std::to_string(row.b) + " is not minimal");
  }

  VerifyReport& report_;
  unsigned p_ = 0;
  Rat gamma_, vS_, workPrec_, vC_;
  ProfilePtr residue_, tate_;
  std::vector<Row> rows_;
};

}  // namespace

VerifyReport verifyDocument(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Format, std::string("not a JSON document: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Format, "document must be a JSON object");
  VerifyReport report;
  report.format = strField(doc, "format");
  Checker check(report);
  try {
    check.instance(doc.at("instance"));
    if (!report.ok()) return report;
    const bool stagesOk = check.stages(doc.at("stages"));
    if (report.format == kPlanFormat) {
      if (stagesOk) {
        check.expect("plan", ratField(doc, "alpha_tail_bound") == check.tailBound(),
                     "recorded tail bound differs");
        check.expect("plan", uintField(doc, "stage_count") == doc.at("stages").size(),
                     "stage count mismatch");
        std::size_t i = 0;
        for (const auto& c : doc.at("certificates")) {
          check.certificate(c, "certificate " + std::to_string(++i), std::nullopt);
        }
      }
    } else if (report.format == kCertificateFormat) {
      if (stagesOk) check.certificate(doc.at("certificate"), "certificate", doc.at("certificate"));
    } else if (report.format == kTraceFormat) {
      if (stagesOk) check.trace(doc);
    } else {
      throw Error(ErrorCode::Format, "unknown format '" + report.format + "'");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Format, e.what());
  }
  return report;
}

}  // namespace hahn
