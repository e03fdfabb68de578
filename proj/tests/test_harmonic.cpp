#include "catch_amalgamated.hpp"
#include "confdens/harmonic.hpp"
#include "test_util.hpp"

using namespace confdens;
using testutil::Rng;

namespace {

RationalPoly random_homogeneous(Rng& rng, int nvars, int deg, int nterms) {
  RationalPoly p(nvars);
  auto monos = homogeneous_monomials(nvars, deg);
  for (int t = 0; t < nterms; ++t) {
    const auto& e = monos[static_cast<size_t>(rng.range(0, static_cast<long>(monos.size()) - 1))];
    p.add_term(e, testutil::random_gaussian(rng));
  }
  return p;
}

RationalPoly poly_x0sq_minus_x1sq_half() {
  RationalPoly p(2);
  p.add_term({2, 0}, GaussianRational(make_rational(1, 2)));
  p.add_term({0, 2}, GaussianRational(make_rational(-1, 2)));
  return p;
}

}  // namespace

TEST_CASE("harmonic dimensions", "[harmonic]") {
  CHECK(harmonic_dim(1, 0) == 1);
  for (int m = 1; m <= 10; ++m) CHECK(harmonic_dim(1, m) == 2);
  for (int m = 0; m <= 10; ++m) CHECK(harmonic_dim(2, m) == 2 * m + 1);
  for (int m = 0; m <= 10; ++m) CHECK(harmonic_dim(3, m) == (m + 1) * (m + 1));
  CHECK(harmonic_dim(2, 3) == 7);
  CHECK(harmonic_dim(3, 4) == 25);
  CHECK(harmonic_dim(4, 2) == 14);
}

TEST_CASE("harmonic bases", "[harmonic]") {
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m <= 5; ++m) {
      const HarmonicBasis& basis = harmonic_basis(n, m);
      INFO("n = " << n << " m = " << m);
      CHECK(basis.dim() == harmonic_dim(n, m));
      for (const auto& h : basis.elements) {
        CHECK(laplacian(h).is_zero());
        CHECK(h.is_homogeneous());
        CHECK(h.total_degree() == m);
      }
    }

  // n = 1 basis is the pair of complex line powers.
  const HarmonicBasis& b1 = harmonic_basis(1, 2);
  RationalPoly z2(2);
  z2.add_term({2, 0}, GaussianRational(1));
  z2.add_term({1, 1}, GaussianRational(make_rational(0), make_rational(2)));
  z2.add_term({0, 2}, GaussianRational(-1));
  CHECK(b1.elements[0] == z2);
  CHECK(b1.elements[1] == z2.conj());
}

TEST_CASE("harmonic coordinates round trip", "[harmonic]") {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 4; ++m) {
      const HarmonicBasis& basis = harmonic_basis(n, m);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<GaussianRational> coeffs;
        RationalPoly combo = RationalPoly::zero(n + 1);
        for (const auto& h : basis.elements) {
          GaussianRational c = testutil::random_gaussian(rng);
          coeffs.push_back(c);
          combo += c * h;
        }
        auto coords = harmonic_coordinates(n, m, combo, /*verify=*/true);
        CHECK(coords == coeffs);
      }
    }
}

TEST_CASE("harmonic projection", "[harmonic]") {
  // x_0^2 in two variables: harmonic part (x_0^2 - x_1^2)/2 plus r^2 * 1/2.
  {
    RationalPoly p(2);
    p.add_term({2, 0}, GaussianRational(1));
    auto layers = harmonic_project(1, p);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0] == poly_x0sq_minus_x1sq_half());
    CHECK(layers[1] == RationalPoly::constant(2, GaussianRational(make_rational(1, 2))));
  }

  // x_0^2 in three variables: harmonic part x_0^2 - r^2/3 plus r^2 * 1/3.
  {
    RationalPoly p(3);
    p.add_term({2, 0, 0}, GaussianRational(1));
    auto layers = harmonic_project(2, p);
    REQUIRE(layers.size() == 2);
    RationalPoly expected(3);
    expected.add_term({2, 0, 0}, GaussianRational(make_rational(2, 3)));
    expected.add_term({0, 2, 0}, GaussianRational(make_rational(-1, 3)));
    expected.add_term({0, 0, 2}, GaussianRational(make_rational(-1, 3)));
    CHECK(layers[0] == expected);
    CHECK(layers[1] == RationalPoly::constant(3, GaussianRational(make_rational(1, 3))));
  }

  // Random homogeneous polynomials decompose into harmonic layers that
  // reassemble exactly.
  Rng rng(32);
  for (int n = 1; n <= 3; ++n)
    for (int deg = 0; deg <= 6; ++deg)
      for (int trial = 0; trial < 4; ++trial) {
        RationalPoly p = random_homogeneous(rng, n + 1, deg, 5);
        auto layers = harmonic_project(n, p);
        RationalPoly sum = RationalPoly::zero(n + 1);
        for (size_t j = 0; j < layers.size(); ++j) {
          CHECK(laplacian(layers[j]).is_zero());
          RationalPoly shifted = layers[j];
          for (size_t t = 0; t < j; ++t) shifted = times_r_squared(shifted);
          sum += shifted;
        }
        CHECK(sum == p);
      }
}

TEST_CASE("sphere moments", "[harmonic]") {
  CHECK(sphere_moment(1, {0, 0}) == 1);
  CHECK(sphere_moment(1, {2, 0}) == make_rational(1, 2));
  CHECK(sphere_moment(1, {4, 0}) == make_rational(3, 8));
  CHECK(sphere_moment(1, {2, 2}) == make_rational(1, 8));
  CHECK(sphere_moment(1, {1, 1}) == 0);
  CHECK(sphere_moment(2, {2, 0, 0}) == make_rational(1, 3));
  CHECK(sphere_moment(2, {4, 0, 0}) == make_rational(1, 5));
  CHECK(sphere_moment(2, {2, 2, 0}) == make_rational(1, 15));
  CHECK(sphere_moment(2, {1, 2, 0}) == 0);
  CHECK(sphere_moment(3, {2, 0, 0, 0}) == make_rational(1, 4));
  CHECK(sphere_moment(3, {2, 2, 0, 0}) == make_rational(1, 24));
  // 3!! * 3!! * 1!! / (4 * 6 * 8 * 10 * 12); cross-checked by the identity
  // sum_i moment(alpha + 2 e_i) == moment(alpha).
  CHECK(sphere_moment(3, {4, 4, 2, 0}) == make_rational(1, 2560));

  // Sum of the squares integrates to one.
  for (int n = 1; n <= 3; ++n) {
    mpq_class total(0);
    for (int k = 0; k <= n; ++k) {
      ExponentVec e(static_cast<size_t>(n) + 1, 0);
      e[static_cast<size_t>(k)] = 2;
      total += sphere_moment(n, e);
    }
    CHECK(total == 1);
  }
}

TEST_CASE("sphere pairing", "[harmonic]") {
  // <z, z> = 1 and <z, zbar> = 0 on the circle.
  const HarmonicBasis& b = harmonic_basis(1, 1);
  CHECK(sphere_inner(1, b.elements[0], b.elements[0]) == GaussianRational(1));
  CHECK(sphere_inner(1, b.elements[0], b.elements[1]).is_zero());

  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    RationalPoly p = random_homogeneous(rng, 3, 2, 4);
    RationalPoly q = random_homogeneous(rng, 3, 2, 4);
    CHECK(sphere_inner(2, p, q) == sphere_inner(2, q, p).conj());
    RationalPoly p2 = random_homogeneous(rng, 3, 4, 4);
    CHECK(sphere_inner(2, p + p2, q) ==
          sphere_inner(2, p, q) + sphere_inner(2, p2, q));
  }
}

TEST_CASE("k-type gram matrices", "[harmonic]") {
  // n = 1, m = 1: the complex line powers are orthonormal.
  CHECK(ktype_gram(1, 1) == DenseMatrix<GaussianRational>::identity(2));

  // n = 2, m = 1: coordinates have norm 1/3.
  {
    const auto& g = ktype_gram(2, 1);
    auto expected = GaussianRational(make_rational(1, 3)) * DenseMatrix<GaussianRational>::identity(3);
    CHECK(g == expected);
  }

  // n = 2, m = 2 against a hand-computed table. Basis order:
  // x0^2 - x2^2, x0 x1, x0 x2, x1^2 - x2^2, x1 x2.
  {
    const auto& g = ktype_gram(2, 2);
    DenseMatrix<GaussianRational> expected(5, 5);
    auto q = [](long num, long den) { return GaussianRational(make_rational(num, den)); };
    expected.at(0, 0) = q(4, 15);
    expected.at(1, 1) = q(1, 15);
    expected.at(2, 2) = q(1, 15);
    expected.at(3, 3) = q(4, 15);
    expected.at(4, 4) = q(1, 15);
    expected.at(0, 3) = q(2, 15);
    expected.at(3, 0) = q(2, 15);
    CHECK(g == expected);
  }

  // Gram matrices are Hermitian positive definite.
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m <= 5; ++m) {
      auto report = hermitian_definiteness(ktype_gram(n, m));
      INFO("n = " << n << " m = " << m);
      CHECK(report.hermitian);
      CHECK(report.positive_definite);
    }
}

TEST_CASE("definiteness detection", "[harmonic]") {
  DenseMatrix<GaussianRational> indef(2, 2);
  indef.at(0, 0) = GaussianRational(1);
  indef.at(1, 1) = GaussianRational(-1);
  auto r1 = hermitian_definiteness(indef);
  CHECK(r1.hermitian);
  CHECK_FALSE(r1.positive_definite);

  DenseMatrix<GaussianRational> nonherm(2, 2);
  nonherm.at(0, 1) = GaussianRational(1);
  auto r2 = hermitian_definiteness(nonherm);
  CHECK_FALSE(r2.hermitian);

  // Complex Hermitian positive definite: [[2, i], [-i, 2]].
  DenseMatrix<GaussianRational> herm(2, 2);
  herm.at(0, 0) = GaussianRational(2);
  herm.at(0, 1) = GaussianRational::i();
  herm.at(1, 0) = -GaussianRational::i();
  herm.at(1, 1) = GaussianRational(2);
  auto r3 = hermitian_definiteness(herm);
  CHECK(r3.hermitian);
  CHECK(r3.positive_definite);
  REQUIRE(r3.pivots.size() == 2);
  CHECK(r3.pivots[0] == 2);
  CHECK(r3.pivots[1] == make_rational(3, 2));
}

TEST_CASE("distinguished rotation labels", "[harmonic]") {
  // The top vector has eigenvalue +m and the spectrum is the full integer
  // ladder with the expected multiplicities.
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m <= 4; ++m) {
      auto report = ktype_label_check(n, m);
      INFO("n = " << n << " m = " << m);
      CHECK(report.ok());
      long expected_total = harmonic_dim(n, m);
      long total = 0;
      for (const auto& [k, mult] : report.weight_multiplicity) {
        CHECK(std::abs(k) <= m);
        total += mult;
      }
      CHECK(total == expected_total);
    }

  {
    auto report = ktype_label_check(1, 3);
    CHECK(report.weight_multiplicity == std::map<long, long>{{-3, 1}, {3, 1}});
  }
  {
    auto report = ktype_label_check(2, 2);
    CHECK(report.weight_multiplicity ==
          std::map<long, long>{{-2, 1}, {-1, 1}, {0, 1}, {1, 1}, {2, 1}});
  }
  {
    // In four ambient variables the multiplicities form a tent: m + 1 - |k|.
    auto report = ktype_label_check(3, 2);
    CHECK(report.weight_multiplicity ==
          std::map<long, long>{{-2, 1}, {-1, 2}, {0, 3}, {1, 2}, {2, 1}});
  }
}

TEST_CASE("dimension check against the Laplacian kernel", "[harmonic]") {
  for (int n = 1; n <= 3; ++n) {
    DimensionReport report = harmonic_dimension_check(n, 8);
    INFO(report.failure);
    CHECK(report.ok);
  }
}
