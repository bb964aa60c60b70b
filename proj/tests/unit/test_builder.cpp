#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hahn/builder.hpp"
#include "hahn/errors.hpp"

using hahn::Rat;

namespace {

struct Row {
  Rat q, vE;
  unsigned long b;
  Rat vEps;
};

// p = 3, gammaX = 1/2, vS = 1/4.
const std::vector<Row> kFrozenPlan = {
    {Rat(0), Rat(1, 9), 0, Rat(0)},
    {Rat(1), Rat(-1, 3), 3, Rat(0)},
    {Rat(-1), Rat(2, 3), 5, Rat(9)},
    {Rat(2), Rat(-7, 9), 7, Rat(9)},
    {Rat(-2), Rat(10, 9), 10, Rat(1701)},
    {Rat(3), Rat(-4, 3), 12, Rat(13122)},
    {Rat(-3), Rat(5, 3), 15, Rat(708588)},
    {Rat(1, 3), Rat(0), 17, Rat(4782969)},
    {Rat(-1, 3), Rat(1, 3), 19, Rat(4782969)},
    {Rat(2, 3), Rat(-1, 9), 21, Rat(4782969)},
    {Rat(-2, 3), Rat(4, 9), 24, Rat(1162261467)},
    {Rat(4), Rat(-16, 9), 26, Rat(1162261467)},
};

// Brute-force re-derivation: vE by scanning denominators 3^d and all
// numerators in range, b by scanning upward from 0.
std::vector<Row> bruteForcePlan(std::size_t stages) {
  const Rat gamma(1, 2), vS(1, 4), vC(2, 3);
  std::vector<Row> rows;
  hahn::OmegaEnumerator omega(3);
  for (std::size_t m = 1; m <= stages; ++m) {
    Row r{omega.next().value(), Rat(0), 0, Rat(0)};
    const Rat lo = -r.q * gamma, hi = lo + vS;
    bool found = false;
    for (long d = 0, den = 1; !found; ++d, den *= 3) {
      std::optional<Rat> best;
      for (long n = -100 * den; n <= 100 * den; ++n) {
        const Rat x(n, den);
        if (lo < x && x < hi && (!best || x.abs() < best->abs() || (x.abs() == best->abs() && x.sign() > 0)))
          best = x;
      }
      if (best) {
        r.vE = *best;
        found = true;
      }
    }
    for (const auto& prev : rows) {
      const Rat scale = hahn::ratPow(3, static_cast<long>(prev.b));
      const Rat off = prev.q.sign() >= 0 ? scale * prev.vE : scale * (prev.vE - prev.q.abs() * vC);
      r.vEps = std::max(r.vEps, -off);
    }
    const Rat w = r.vE + r.q * gamma;
    if (m > 1) {
      for (unsigned long b = 0;; ++b) {
        const Rat scale = hahn::ratPow(3, static_cast<long>(b));
        bool ok = Rat(static_cast<long>(m)) < scale * w && r.vEps / scale + w < vS;
        for (const auto& prev : rows) {
          ok = ok && b > prev.b &&
               Rat(1) + vS < hahn::ratPow(3, static_cast<long>(b - prev.b)) * w;
        }
        if (ok) {
          r.b = b;
          break;
        }
      }
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("frozen plan agrees with a brute-force re-derivation") {
  const auto rows = bruteForcePlan(12);
  REQUIRE(rows.size() == kFrozenPlan.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].q == kFrozenPlan[i].q);
    CHECK(rows[i].vE == kFrozenPlan[i].vE);
    CHECK(rows[i].b == kFrozenPlan[i].b);
    CHECK(rows[i].vEps == kFrozenPlan[i].vEps);
  }
}

TEST_CASE("buildPlan reproduces the frozen M = 12 plan") {
  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  REQUIRE(plan.size() == 12);
  CHECK(plan.c().valuation == Rat(2, 3));
  for (std::size_t m = 1; m <= 12; ++m) {
    const auto& s = plan.stage(m);
    CAPTURE(m);
    CHECK(s.m == m);
    CHECK(s.label == kFrozenPlan[m - 1].q);
    CHECK(s.vE == kFrozenPlan[m - 1].vE);
    CHECK(s.b == kFrozenPlan[m - 1].b);
    CHECK(s.vEps == kFrozenPlan[m - 1].vEps);
    CHECK(s.origin == hahn::StageOrigin::Enumeration);
    CHECK(plan.stageValue(m).sign() > 0);
    CHECK(plan.stageValue(m) < Rat(1, 4));
    if (m > 1) CHECK(Rat(static_cast<long>(m)) < plan.alphaTermWeight(m));
  }
  CHECK(plan.stage(1).b == 0);
  CHECK(plan.stage(1).vE == Rat(1, 9));
}

TEST_CASE("buildPlan precision guard") {
  CHECK_THROWS_AS(hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(13)), hahn::Error);
  try {
    hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(13));
  } catch (const hahn::Error& e) {
    CHECK(e.code() == hahn::ErrorCode::PrecisionExhausted);
  }
  CHECK_THROWS_AS(hahn::buildPlan(hahn::InstanceParams{}, 0, Rat(13)), hahn::Error);
}

TEST_CASE("assembleAlpha") {
  const auto single = hahn::buildPlan(hahn::InstanceParams{}, 1, Rat(4));
  const auto a1 = hahn::assembleAlpha(single);
  REQUIRE(a1.size() == 1);
  CHECK(a1.coefficient({Rat(1, 9), Rat(0)}) == 1);

  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  const auto alpha = hahn::assembleAlpha(plan);
  CHECK(alpha.size() == 12);
  const auto lead = hahn::valuationAndLeading(alpha);
  REQUIRE(lead);
  CHECK(lead->valuation == Rat(1, 9));
  CHECK(lead->valuation < Rat(1, 4));
  CHECK(alpha.precision() == hahn::Precision::at(plan.tailBound()));
  CHECK(Rat(13) < plan.tailBound());
  for (std::size_t m = 1; m <= 12; ++m) CHECK(plan.alphaTermWeight(m) < plan.tailBound());
}

TEST_CASE("all twelve stages yield adapted certificates") {
  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  for (std::size_t m = 1; m <= 12; ++m) {
    CAPTURE(m);
    const auto cert = hahn::buildAdapted(plan, m);
    CHECK(cert.normInRange);
    CHECK(cert.leadingExponentOk);
    CHECK(cert.residualOk);
    CHECK(cert.imageValuation.sign() >= 0);
    CHECK(cert.imageValuation < Rat(1, 4));
    CHECK_FALSE(cert.residualBound < Rat(5, 4));
    CHECK(cert.preimage.isIntegral());
    CHECK(cert.quotientValuations.size() == m - 1);
    for (const auto& v : cert.quotientValuations) CHECK(v.sign() >= 0);
  }
}

TEST_CASE("stage one certificate is eps_1 x3 with image e_1") {
  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  const auto cert = hahn::buildAdapted(plan, 1);
  const std::vector<Rat> x3{Rat(0), Rat(0), Rat(1)};
  CHECK(cert.preimage.series() == plan.tate().monomial(1, Rat(0), x3));
  CHECK(cert.leadT == Rat(1, 9));
  CHECK(cert.leadCoeff == 1);
  CHECK(cert.q == Rat(0));
}

TEST_CASE("image consistency: f(a_q)^(p^b) is eps times the alpha tail") {
  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  for (std::size_t m = 1; m <= 12; ++m) {
    CAPTURE(m);
    const auto cert = hahn::buildAdapted(plan, m);
    const auto& s = plan.stage(m);
    const auto raised = hahn::frobenius(cert.image, static_cast<long>(s.b));
    hahn::TruncatedSeries tail(plan.field().profile());
    for (std::size_t j = m; j <= 12; ++j) {
      const auto& sj = plan.stage(j);
      const Rat scale = hahn::ratPow(3, static_cast<long>(sj.b));
      tail.addTerm({s.vEps + scale * sj.vE, scale * sj.label}, 1);
    }
    REQUIRE_FALSE(raised.precision().isExact());
    CHECK(raised == hahn::capPrecision(tail, raised.precision().bound()));
  }
}

TEST_CASE("non-evaluation witness and factorization through x1 x2 - c") {
  const auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  const auto sigma = plan.substitution();
  const std::vector<Rat> x1{Rat(1), Rat(0), Rat(0)};
  const std::vector<Rat> x1x2{Rat(1), Rat(1), Rat(0)};
  const auto fx1 = hahn::applySubstitution(sigma, hahn::TateElement(plan.tate(), plan.tate().monomial(1, Rat(0), x1)), Rat(26));
  const Rat v = hahn::valuationAndLeading(fx1)->valuation;
  CHECK(v == Rat(1, 2));
  CHECK_FALSE(plan.field().base().valueInGroundGroup(v));

  auto relation = plan.tate().monomial(1, Rat(0), x1x2);
  relation.addTerm({plan.c().valuation, Rat(0), Rat(0), Rat(0)}, 2);
  const auto image = hahn::applySubstitution(sigma, hahn::TateElement(plan.tate(), relation), Rat(26));
  CHECK(image.isZero());
  CHECK(image.precision().isExact());
}

TEST_CASE("demand and lookahead stages") {
  auto plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
  const std::size_t m = plan.appendStage(Rat(5, 9), hahn::StageOrigin::Demand);
  CHECK(m == 13);
  CHECK(plan.stageFor(Rat(5, 9)) == std::optional<std::size_t>(13));
  CHECK_THROWS_AS(plan.appendStage(Rat(5, 9), hahn::StageOrigin::Demand), hahn::Error);
  CHECK_THROWS_AS(plan.appendStage(Rat(1, 2), hahn::StageOrigin::Demand), hahn::Error);
  plan.resolveStage(m, Rat(26), 4096);
  CHECK_FALSE(plan.stageResolution(m) < Rat(26));
  CHECK(plan.size() > 13);
  CHECK(plan.stage(14).origin == hahn::StageOrigin::Lookahead);
  CHECK(plan.stage(14).label == Rat(-4));  // omega(13)
  const auto cert = hahn::buildAdapted(plan, m);
  CHECK(cert.leadingExponentOk);
  CHECK(cert.residualOk);
  for (std::size_t j = 2; j <= plan.size(); ++j) CHECK(plan.stage(j - 1).b < plan.stage(j).b);
}
