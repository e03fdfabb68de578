#include "catch_amalgamated.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/lambda_scalar.hpp"
#include "test_util.hpp"

using namespace confdens;
using testutil::Rng;

TEST_CASE("rational square roots", "[scalars]") {
  CHECK(*rational_sqrt(make_rational(4, 9)) == make_rational(2, 3));
  CHECK(*rational_sqrt(mpq_class(0)) == 0);
  CHECK(*rational_sqrt(mpq_class(144)) == 12);
  CHECK(!rational_sqrt(mpq_class(2)).has_value());
  CHECK(!rational_sqrt(mpq_class(-4)).has_value());
  CHECK(!rational_sqrt(make_rational(4, 7)).has_value());
}

TEST_CASE("gaussian rational arithmetic on fixed values", "[scalars]") {
  GaussianRational a(make_rational(1), make_rational(2));   // 1 + 2i
  GaussianRational b(make_rational(3), make_rational(-1));  // 3 - i
  CHECK((a * b) == GaussianRational(make_rational(5), make_rational(5)));
  CHECK((a + b) == GaussianRational(make_rational(4), make_rational(1)));

  GaussianRational one_plus_i(make_rational(1), make_rational(1));
  CHECK(one_plus_i.inverse() == GaussianRational(make_rational(1, 2), make_rational(-1, 2)));
  CHECK(one_plus_i.norm_sq() == 2);
  CHECK(one_plus_i.conj() == GaussianRational(make_rational(1), make_rational(-1)));
  CHECK((GaussianRational::i() * GaussianRational::i()) == GaussianRational(-1));
}

TEST_CASE("gaussian rational field axioms", "[scalars]") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    GaussianRational a = testutil::random_gaussian(rng);
    GaussianRational b = testutil::random_gaussian(rng);
    GaussianRational c = testutil::random_gaussian(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + (-a)).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("gaussian rational printing and parsing", "[scalars]") {
  CHECK(GaussianRational(0).to_string() == "0");
  CHECK(GaussianRational(make_rational(-1, 2)).to_string() == "-1/2");
  CHECK(GaussianRational::i().to_string() == "i");
  CHECK((-GaussianRational::i()).to_string() == "-i");
  CHECK(GaussianRational(make_rational(0), make_rational(2, 3)).to_string() == "2/3*i");
  CHECK(GaussianRational(make_rational(1, 2), make_rational(-2, 3)).to_string() == "1/2-2/3*i");

  auto roundtrip_text = [](const std::string& s) {
    auto v = GaussianRational::parse(s);
    REQUIRE(v.has_value());
    return v->to_string();
  };
  for (const std::string& s :
       {"0", "3", "-1/2", "i", "-i", "2/3*i", "1/2-2/3*i", "-3+i", "7/5", "-2-2*i"})
    CHECK(roundtrip_text(s) == s);

  CHECK(GaussianRational::parse("1/2 + 1/3*i").has_value());
  CHECK(GaussianRational::parse("4/6") == GaussianRational(make_rational(2, 3)));

  for (const std::string& bad :
       {"", "1.5", "1e3", "1/0", "2i", "+1", "i*2", "1+", "1++i", "x", "1/2/3", "--1", "1 2"})
    CHECK_FALSE(GaussianRational::parse(bad).has_value());

  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    GaussianRational z = testutil::random_gaussian(rng);
    auto back = GaussianRational::parse(z.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == z);
  }
}

TEST_CASE("gaussian square roots", "[scalars]") {
  CHECK(*gaussian_sqrt(GaussianRational(make_rational(9, 4))) ==
        GaussianRational(make_rational(3, 2)));
  CHECK(*gaussian_sqrt(GaussianRational(-1)) == GaussianRational::i());
  CHECK(*gaussian_sqrt(GaussianRational(make_rational(0), make_rational(2))) ==
        GaussianRational(make_rational(1), make_rational(1)));
  CHECK(*gaussian_sqrt(GaussianRational(make_rational(3), make_rational(4))) ==
        GaussianRational(make_rational(2), make_rational(1)));
  CHECK(!gaussian_sqrt(GaussianRational(2)).has_value());
  CHECK(!gaussian_sqrt(GaussianRational(make_rational(1), make_rational(2))).has_value());

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    GaussianRational z = testutil::random_gaussian(rng);
    auto r = gaussian_sqrt(z * z);
    REQUIRE(r.has_value());
    CHECK((*r == z || *r == -z));
  }
}

TEST_CASE("univariate polynomial arithmetic", "[scalars]") {
  UniPoly x = UniPoly::variable();
  UniPoly p = UniPoly::from_coeffs({GaussianRational(make_rational(1, 2)), GaussianRational(-3),
                                    GaussianRational(2)});
  CHECK(p.to_string() == "2*lambda^2 - 3*lambda + 1/2");
  CHECK(p.degree() == 2);
  CHECK(p.derivative() == UniPoly::from_coeffs({GaussianRational(-3), GaussianRational(4)}));

  // (x-1)(x+2) and (x-1)(x-3) share exactly the factor (x-1).
  UniPoly a = (x - UniPoly(GaussianRational(1))) * (x + UniPoly(GaussianRational(2)));
  UniPoly b = (x - UniPoly(GaussianRational(1))) * (x - UniPoly(GaussianRational(3)));
  CHECK(UniPoly::gcd(a, b) == x - UniPoly(GaussianRational(1)));

  Rng rng(4);
  for (int trial = 0; trial < 80; ++trial) {
    UniPoly f = testutil::random_unipoly(rng, 4);
    UniPoly g = testutil::random_unipoly(rng, 3);
    if (g.is_zero()) continue;
    auto [q, r] = f.divmod(g);
    CHECK(q * g + r == f);
    CHECK(r.degree() < g.degree());
    // Derivative is a derivation.
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    // Evaluation is a ring morphism.
    GaussianRational pt = testutil::random_gaussian(rng);
    CHECK((f * g).eval(pt) == f.eval(pt) * g.eval(pt));
    CHECK((f + g).eval(pt) == f.eval(pt) + g.eval(pt));
  }

  // Composition with an affine argument.
  UniPoly sq = x * x;
  CHECK(sq.compose_affine(GaussianRational(1), GaussianRational(-1)) ==
        UniPoly::from_coeffs({GaussianRational(1), GaussianRational(-2), GaussianRational(1)}));
}

TEST_CASE("lambda scalar canonical form and field structure", "[scalars]") {
  LambdaScalar lam = LambdaScalar::lambda();
  LambdaScalar one(1);

  // (lambda^2 - 1)/(lambda - 1) reduces to lambda + 1.
  LambdaScalar reduced = (lam * lam - one) / (lam - one);
  CHECK(reduced == lam + one);
  CHECK(reduced.is_polynomial());

  // Canonical denominators are monic: (2 lambda)/(2 lambda - 2) = lambda/(lambda - 1).
  LambdaScalar frac(UniPoly::from_coeffs({GaussianRational(0), GaussianRational(2)}),
                    UniPoly::from_coeffs({GaussianRational(-2), GaussianRational(2)}));
  CHECK(frac.num().to_string() == "lambda");
  CHECK(frac.den().to_string() == "lambda - 1");
  CHECK(frac.to_string() == "(lambda)/(lambda - 1)");

  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    LambdaScalar f = testutil::random_lambda_scalar(rng);
    LambdaScalar g = testutil::random_lambda_scalar(rng);
    LambdaScalar h = testutil::random_lambda_scalar(rng);
    CHECK((f + g) + h == f + (g + h));
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f + g == g + f);
    CHECK((f - f).is_zero());
    if (!f.is_zero()) CHECK(f / f == LambdaScalar(1));
  }
}

TEST_CASE("lambda scalar evaluation and substitution", "[scalars]") {
  LambdaScalar lam = LambdaScalar::lambda();
  Rng rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    // Polynomial scalars evaluate anywhere; evaluation is a ring morphism.
    LambdaScalar f(testutil::random_unipoly(rng, 3));
    LambdaScalar g(testutil::random_unipoly(rng, 3));
    GaussianRational pt = testutil::random_gaussian(rng);
    CHECK((f * g).eval(pt) == f.eval(pt) * g.eval(pt));
    CHECK((f + g).eval(pt) == f.eval(pt) + g.eval(pt));
  }

  // lambda(lambda-1) is symmetric under lambda -> 1 - lambda.
  LambdaScalar casimir_shape = lam * (lam - LambdaScalar(1));
  CHECK(casimir_shape.substitute_affine(GaussianRational(1), GaussianRational(-1)) == casimir_shape);

  // Conjugation treats the variable as real.
  LambdaScalar f = LambdaScalar(GaussianRational::i()) * lam + LambdaScalar(1);
  CHECK(f.conj() == LambdaScalar(-GaussianRational::i()) * lam + LambdaScalar(1));

  // Evaluating at a pole throws.
  LambdaScalar pole = LambdaScalar(1) / (lam - LambdaScalar(1));
  CHECK_THROWS_AS(pole.eval(GaussianRational(1)), internal_error);
}

namespace {

LambdaScalar poly_from_roots(const std::vector<GaussianRational>& roots) {
  UniPoly p(GaussianRational(1));
  for (const auto& r : roots)
    p = p * UniPoly::from_coeffs({-r, GaussianRational(1)});
  return LambdaScalar(p);
}

}  // namespace

TEST_CASE("root extraction", "[scalars]") {
  LambdaScalar lam = LambdaScalar::lambda();

  auto zero_result = roots_of(LambdaScalar(0));
  CHECK(zero_result.identically_zero);

  auto const_result = roots_of(LambdaScalar(make_rational(5, 3)));
  CHECK(const_result.complete);
  CHECK(const_result.roots.empty());

  auto quad = roots_of(lam * lam - LambdaScalar(1));
  CHECK(quad.complete);
  CHECK(quad.roots == std::vector<GaussianRational>{GaussianRational(-1), GaussianRational(1)});

  auto affine = roots_of(LambdaScalar(2) - LambdaScalar(2) * lam);
  CHECK(affine.roots == std::vector<GaussianRational>{GaussianRational(1)});

  auto gauss = roots_of(lam * lam + LambdaScalar(1));
  CHECK(gauss.complete);
  CHECK(gauss.roots ==
        std::vector<GaussianRational>{-GaussianRational::i(), GaussianRational::i()});

  // lambda^2 - 2 has no roots in Q(i); the empty answer is still complete.
  auto irr = roots_of(lam * lam - LambdaScalar(2));
  CHECK(irr.complete);
  CHECK(irr.roots.empty());

  auto threshold = roots_of(LambdaScalar(3) + LambdaScalar(2) * lam);
  CHECK(threshold.roots == std::vector<GaussianRational>{GaussianRational(make_rational(-3, 2))});

  auto cubic = roots_of(poly_from_roots({GaussianRational(-2), GaussianRational(make_rational(1, 3)),
                                         GaussianRational(1)}));
  CHECK(cubic.complete);
  CHECK(cubic.roots == std::vector<GaussianRational>{GaussianRational(-2),
                                                     GaussianRational(make_rational(1, 3)),
                                                     GaussianRational(1)});

  // (lambda^2 - 2)(lambda - 1): the rational root is found and the residual
  // quadratic is decided in closed form, so the set {1} is complete.
  auto mixed = roots_of((lam * lam - LambdaScalar(2)) * (lam - LambdaScalar(1)));
  CHECK(mixed.complete);
  CHECK(mixed.roots == std::vector<GaussianRational>{GaussianRational(1)});

  // lambda^3 - 2 resists the search: incomplete.
  auto hard = roots_of(lam * lam * lam - LambdaScalar(2));
  CHECK_FALSE(hard.complete);
  CHECK(hard.roots.empty());

  // Degree-3 with a rational root and Gaussian residual roots.
  auto gauss3 = roots_of((lam * lam + LambdaScalar(1)) * (lam - LambdaScalar(2)));
  CHECK(gauss3.complete);
  CHECK(gauss3.roots == std::vector<GaussianRational>{-GaussianRational::i(), GaussianRational::i(),
                                                      GaussianRational(2)});

  // Multiple roots are reported once.
  auto square = roots_of((lam - LambdaScalar(1)) * (lam - LambdaScalar(1)));
  CHECK(square.roots == std::vector<GaussianRational>{GaussianRational(1)});

  // Only the numerator contributes roots.
  auto rational = roots_of((lam - LambdaScalar(1)) / (lam - LambdaScalar(2)));
  CHECK(rational.roots == std::vector<GaussianRational>{GaussianRational(1)});

  // Roots with larger coefficients, found through the divisor search.
  auto big = roots_of(poly_from_roots({GaussianRational(12), GaussianRational(make_rational(-7, 5)),
                                       GaussianRational(3), GaussianRational(0)}));
  CHECK(big.complete);
  CHECK(big.roots == std::vector<GaussianRational>{GaussianRational(make_rational(-7, 5)),
                                                   GaussianRational(0), GaussianRational(3),
                                                   GaussianRational(12)});
}
