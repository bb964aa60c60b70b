#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hahn/errors.hpp"
#include "hahn/tate.hpp"
#include "support.hpp"

using hahn::Precision;
using hahn::Rat;
using hahn::TateElement;
using hahn::TruncatedSeries;

namespace {

const hahn::GroundField& k3() {
  static const hahn::GroundField f(3);
  return f;
}

const hahn::TateAlgebra& r1() {
  static const hahn::TateAlgebra a(k3(), 1);
  return a;
}

const hahn::TateAlgebra& r2() {
  static const hahn::TateAlgebra a(k3(), 2);
  return a;
}

TateElement one(std::initializer_list<std::tuple<hahn::Coeff, Rat, Rat>> terms,
                Precision prec = Precision::exact()) {
  TruncatedSeries s(r1().profile(), prec);
  for (const auto& [c, a, q] : terms) s.addTerm({a, q}, c);
  return TateElement(r1(), s);
}

Rat seminorm(const TateElement& f, const Rat& rho) {
  const std::vector<Rat> r{rho};
  return hahn::diskSeminorm(f, r);
}

const hahn::ResidueField& field() {
  static const hahn::ResidueField f(k3(), Rat(1, 2));
  return f;
}

// x1 -> x, x2 -> t^(2/3) x^-1.
hahn::SubstitutionMap standard() {
  return hahn::SubstitutionMap(field(), {field().x(), field().monomial(1, Rat(2, 3), Rat(-1))});
}

}  // namespace

TEST_CASE("Tate elements reject negative or non-Z[1/p] exponents") {
  TruncatedSeries s(r1().profile());
  s.addTerm({Rat(0), Rat(-1)}, 1);
  CHECK_THROWS_AS(TateElement(r1(), s), hahn::Error);
  TruncatedSeries u(r1().profile());
  u.addTerm({Rat(0), Rat(1, 2)}, 1);
  CHECK_THROWS_AS(TateElement(r1(), u), hahn::Error);
  CHECK(one({{1, Rat(0), Rat(1, 3)}}).isIntegral());
  CHECK_FALSE(one({{1, Rat(-1), Rat(0)}}).isIntegral());
}

TEST_CASE("diskSeminorm") {
  const TateElement x = TateElement(r1(), r1().variable(1));
  CHECK(seminorm(x, Rat(1, 2)) == Rat(1, 2));
  CHECK(seminorm(one({{1, Rat(1), Rat(1)}, {1, Rat(0), Rat(2)}}), Rat(1, 2)) == Rat(1));
  CHECK(seminorm(one({{1, Rat(0), Rat(0)}}), Rat(7, 3)) == Rat(0));
  CHECK_THROWS_AS(seminorm(one({{1, Rat(3), Rat(1)}}, Precision::at(Rat(2))), Rat(0)), hahn::Error);
  CHECK_THROWS_AS(seminorm(one({}, Precision::at(Rat(2))), Rat(0)), hahn::Error);
}

TEST_CASE("finiteApprox") {
  const auto f = one({{1, Rat(1), Rat(1)}, {2, Rat(0), Rat(3)}});
  const std::vector<Rat> rho{Rat(1, 3)};
  CHECK(hahn::finiteApprox(f, Rat(1, 2), rho).series().isZero());
  CHECK(hahn::finiteApprox(f, Rat(5), rho).series() == f.series());
  // weights 4/3 and 1: only the second survives vEps = 1.
  CHECK(hahn::finiteApprox(f, Rat(1), rho).series() == one({{2, Rat(0), Rat(3)}}).series());
  CHECK_THROWS_AS(hahn::finiteApprox(one({{1, Rat(0), Rat(1)}}, Precision::at(Rat(1))), Rat(1), rho),
                  hahn::Error);
}

TEST_CASE("property: finiteApprox remainder lies strictly beyond vEps") {
  testsupport::Gen gen(201);
  for (int i = 0; i < 300; ++i) {
    const auto s = gen.series(r1().profile(), 8, 6, 12, 4, true, false);
    const TateElement f(r1(), s);
    const std::vector<Rat> rho{gen.padic(3, 0, 3, 2)};
    const Rat vEps = gen.padic(3, 0, 5, 1);
    for (const auto rule : {hahn::CutRule::PointWeight, hahn::CutRule::CoefficientNorm}) {
      const auto approx = hahn::finiteApprox(f, vEps, rho, rule);
      const TateElement rest(r1(), hahn::sub(f.series(), approx.series()));
      for (const auto& [e, c] : rest.series().terms()) {
        CHECK(vEps < e[0] + e[1] * rho[0]);
      }
      if (!rest.series().precision().isExact()) CHECK(vEps < rest.series().precision().bound());
    }
  }
}

TEST_CASE("typeIILowerBound examples") {
  const auto x = hahn::typeIILowerBound(TateElement(r1(), r1().variable(1)), Rat(1));
  CHECK(x.bound == Rat(1));
  CHECK(x.seminorm == Rat(1));
  const auto tx = hahn::typeIILowerBound(one({{1, Rat(1), Rat(0)}, {1, Rat(0), Rat(1)}}), Rat(2));
  CHECK(tx.bound == Rat(1));
  CHECK(tx.seminorm == Rat(1));
  CHECK(tx.term == hahn::ExponentVec{Rat(1), Rat(0)});
  const auto roots = hahn::typeIILowerBound(one({{1, Rat(0), Rat(1, 3)}, {1, Rat(0), Rat(1)}}), Rat(1));
  CHECK(roots.bound == Rat(1, 3));
  CHECK_THROWS_AS(hahn::typeIILowerBound(one({{1, Rat(0), Rat(1)}}), Rat(1, 2)), hahn::Error);
  CHECK_THROWS_AS(hahn::typeIILowerBound(one({}), Rat(1)), hahn::Error);
}

TEST_CASE("property: seminorm is multiplicative and ultrametric") {
  testsupport::Gen gen(202);
  for (int i = 0; i < 300; ++i) {
    const TateElement f(r1(), testsupport::exactCopy(gen.series(r1().profile(), 6, 6, 12, 3, true)));
    const TateElement g(r1(), testsupport::exactCopy(gen.series(r1().profile(), 6, 6, 12, 3, true)));
    if (f.series().isZero() || g.series().isZero()) continue;
    const Rat rho = Rat(gen.range(0, 9), 7);  // includes radii outside Z[1/3]
    const Rat vf = seminorm(f, rho), vg = seminorm(g, rho);
    const TateElement fg(r1(), hahn::mul(f.series(), g.series()));
    CHECK(seminorm(fg, rho) == vf + vg);
    const TateElement sum(r1(), hahn::add(f.series(), g.series()));
    if (vf != vg) CHECK(seminorm(sum, rho) == std::min(vf, vg));
  }
}

TEST_CASE("applySubstitution examples") {
  const auto sigma = standard();
  const std::vector<Rat> x1{Rat(1), Rat(0)};
  const std::vector<Rat> x1x2{Rat(1), Rat(1)};
  const std::vector<Rat> root{Rat(1, 3), Rat(0)};
  const auto image = [&](const std::vector<Rat>& exps, hahn::Coeff c = 1) {
    return hahn::applySubstitution(sigma, TateElement(r2(), r2().monomial(c, Rat(0), exps)), Rat(10));
  };
  CHECK(image(x1) == field().x());
  CHECK(image(x1x2) == field().monomial(1, Rat(2, 3), Rat(0)));
  CHECK(image(root) == field().monomial(1, Rat(0), Rat(1, 3)));

  TruncatedSeries relation = r2().monomial(1, Rat(0), x1x2);
  relation.addTerm({Rat(2, 3), Rat(0), Rat(0)}, 2);
  const auto zero = hahn::applySubstitution(sigma, TateElement(r2(), relation), Rat(10));
  CHECK(zero.isZero());
  CHECK(zero.precision().isExact());
}

TEST_CASE("property: applySubstitution is a homomorphism into valuation >= 0") {
  testsupport::Gen gen(203);
  const auto sigma = standard();
  for (int i = 0; i < 150; ++i) {
    const TateElement f(r2(), gen.series(r2().profile(), 4, 4, 8, 2, true));
    const TateElement g(r2(), gen.series(r2().profile(), 4, 4, 8, 2, true));
    const Rat cap(8);
    const auto ff = hahn::applySubstitution(sigma, f, cap);
    const auto fg = hahn::applySubstitution(sigma, g, cap);
    const auto prod = hahn::applySubstitution(sigma, TateElement(r2(), hahn::mul(f.series(), g.series())), cap);
    const auto expected = hahn::mul(ff, fg);
    const Precision common = Precision::min(prod.precision(), expected.precision());
    const Rat bound = common.isExact() ? cap : common.bound();
    CHECK(hahn::capPrecision(prod, bound) == hahn::capPrecision(expected, bound));
    const auto sum = hahn::applySubstitution(sigma, TateElement(r2(), hahn::add(f.series(), g.series())), cap);
    CHECK(hahn::sub(sum, hahn::add(ff, fg)).isZero());
    CHECK_FALSE(ff.valuationBound() < Precision::at(Rat(0)));
  }
}

TEST_CASE("restrictVariables drops terms in forgotten variables") {
  TruncatedSeries s(r2().profile());
  s.addTerm({Rat(0), Rat(1), Rat(0)}, 1);
  s.addTerm({Rat(1), Rat(0), Rat(1, 3)}, 2);
  const auto r = hahn::restrictVariables(TateElement(r2(), s), r1());
  CHECK(r.series() == r1().variable(1));
}
