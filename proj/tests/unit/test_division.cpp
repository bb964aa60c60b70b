#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hahn/division.hpp"
#include "hahn/errors.hpp"
#include "support.hpp"

using hahn::Precision;
using hahn::Rat;
using hahn::TruncatedSeries;

namespace {

hahn::AlphaPlan standardPlan() { return hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26)); }

TruncatedSeries residue(const hahn::AlphaPlan& plan,
                        std::initializer_list<std::tuple<hahn::Coeff, Rat, Rat>> terms) {
  TruncatedSeries s(plan.field().profile());
  for (const auto& [c, a, q] : terms) s.addTerm({a, q}, c);
  return s;
}

Rat valuationOr(const TruncatedSeries& s, const Rat& fallback) {
  const auto v = s.valuationBound();
  return v.isExact() ? fallback : v.bound();
}

void checkTrace(const hahn::DivisionTrace& trace, std::size_t steps) {
  const Rat vS(1, 4);
  REQUIRE(trace.steps.size() == steps);
  for (const auto& s : trace.steps) {
    const Rat m(static_cast<long>(s.m));
    CHECK_FALSE(valuationOr(s.betaNext, Rat(1000)) < m + Rat(1) + vS);
    CHECK_FALSE(valuationOr(s.e.series(), Rat(1000)) < m);
    for (const auto& v : s.quotientValuations) CHECK(v.sign() > 0);
  }
  CHECK_FALSE(trace.finalResidualValuation < Rat(static_cast<long>(steps)) + vS);
}

}  // namespace

TEST_CASE("normalizeTarget") {
  const auto plan = standardPlan();
  const auto high = residue(plan, {{1, Rat(1), Rat(0)}});
  CHECK(hahn::normalizeTarget(high, Rat(1, 4)).shift == 0);
  const auto root = residue(plan, {{1, Rat(0), Rat(1, 3)}});
  const auto n = hahn::normalizeTarget(root, Rat(1, 4));
  CHECK(n.shift == 1);
  CHECK(n.beta == residue(plan, {{1, Rat(1), Rat(1, 3)}}));
  CHECK(hahn::normalizeTarget(residue(plan, {{1, Rat(2), Rat(0)}}), Rat(1, 4)).shift == 0);
  // tied minimal weights are fine for normalization
  const auto tie = residue(plan, {{1, Rat(-1), Rat(0)}, {1, Rat(-2), Rat(2)}});
  CHECK(hahn::normalizeTarget(tie, Rat(1, 4)).shift == 2);
}

TEST_CASE("slice uses half-open bands") {
  const auto plan = standardPlan();
  CHECK(hahn::slice(TruncatedSeries(plan.field().profile()), 0, Rat(1, 4)).isZero());
  const auto one = residue(plan, {{1, Rat(0), Rat(1)}});
  CHECK(hahn::slice(one, 0, Rat(1, 4)) == one);
  // weights 1/4 (kept at m = 0) and 5/4 (first weight of band 1)
  const auto pair = residue(plan, {{1, Rat(1, 4), Rat(0)}, {2, Rat(5, 4), Rat(0)}});
  CHECK(hahn::slice(pair, 0, Rat(1, 4)) == residue(plan, {{1, Rat(1, 4), Rat(0)}}));
  CHECK(hahn::slice(pair, 1, Rat(1, 4)) == residue(plan, {{2, Rat(5, 4), Rat(0)}}));
}

TEST_CASE("zero target and zero steps") {
  auto plan = standardPlan();
  const auto zero = TruncatedSeries(plan.field().profile());
  const auto trace = hahn::runDivision(zero, plan, 4);
  CHECK(trace.aFinal.series().isZero());
  for (const auto& s : trace.steps) {
    CHECK(s.slice.isZero());
    CHECK(s.e.series().isZero());
  }
  const auto empty = hahn::runDivision(residue(plan, {{1, Rat(0), Rat(1)}}), plan, 0);
  CHECK(empty.steps.empty());
  CHECK(empty.aFinal.series().isZero());
}

TEST_CASE("single monomial in the first band is consumed in one step") {
  auto plan = standardPlan();
  const auto beta = residue(plan, {{2, Rat(0), Rat(1)}});
  hahn::Divider divider(plan, beta);
  const auto& step = divider.step();
  CHECK(step.exponents == std::vector<Rat>{Rat(1)});
  CHECK(step.betaNext.coefficient({Rat(0), Rat(1)}) == 0);
  CHECK_FALSE(step.residualValuation < Rat(5, 4));
}

TEST_CASE("unnormalized target is rejected by the divider") {
  auto plan = standardPlan();
  CHECK_THROWS_AS(hahn::Divider(plan, residue(plan, {{1, Rat(0), Rat(0)}})), hahn::Error);
}

TEST_CASE("demand stages extend the plan for new exponents") {
  auto plan = standardPlan();
  const auto beta = residue(plan, {{1, Rat(1), Rat(7, 9)}});
  const auto trace = hahn::runDivision(beta, plan, 3);
  checkTrace(trace, 3);
  REQUIRE(plan.stageFor(Rat(7, 9)));
  CHECK(plan.stage(*plan.stageFor(Rat(7, 9))).origin == hahn::StageOrigin::Demand);
}

TEST_CASE("property: random normalized targets contract") {
  testsupport::Gen gen(301);
  for (int trial = 0; trial < 12; ++trial) {
    auto plan = standardPlan();
    TruncatedSeries beta(plan.field().profile());
    const std::size_t n = 1 + gen.below(8);
    for (std::size_t i = 0; i < n; ++i) {
      const Rat q = gen.padic(3, -3, 3, 2);
      Rat a = gen.padic(3, 0, 6, 2);
      while (a + q * Rat(1, 2) < Rat(1, 4)) a = a + Rat(1);
      beta.addTerm({a, q}, gen.unit(3));
    }
    const auto trace = hahn::runDivision(beta, plan, 6);
    checkTrace(trace, 6);
    const auto image = hahn::applySubstitution(plan.substitution(), trace.aFinal, plan.workPrec());
    CHECK_FALSE(valuationOr(hahn::sub(image, beta), Rat(1000)) < Rat(6) + Rat(1, 4));
  }
}

TEST_CASE("round trip: targets f(a) for integral a") {
  testsupport::Gen gen(302);
  for (int trial = 0; trial < 6; ++trial) {
    auto plan = standardPlan();
    TruncatedSeries a(plan.tate().profile());
    const std::size_t n = 1 + gen.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = 1 + gen.below(4);
      const auto cert = hahn::buildAdapted(plan, m);
      a = hahn::add(a, hahn::mulMonomial(cert.preimage.series(), gen.unit(3),
                                         {gen.padic(3, 1, 3, 1), Rat(0), Rat(0), Rat(0)}));
    }
    const auto beta = hahn::applySubstitution(plan.substitution(), hahn::TateElement(plan.tate(), a),
                                              plan.workPrec());
    const auto normalized = hahn::normalizeTarget(beta, Rat(1, 4));
    CHECK(normalized.shift == 0);
    const auto trace = hahn::runDivision(normalized.beta, plan, 5);
    checkTrace(trace, 5);
  }
}
