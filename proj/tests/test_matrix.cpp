#include "catch_amalgamated.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/matrix.hpp"
#include "test_util.hpp"

using namespace confdens;
using testutil::Rng;

namespace {

using QMat = DenseMatrix<GaussianRational>;

QMat random_matrix(Rng& rng, size_t rows, size_t cols) {
  QMat m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      if (rng.range(0, 2)) m.at(i, j) = testutil::random_gaussian(rng);
  return m;
}

}  // namespace

TEST_CASE("matrix arithmetic basics", "[matrix]") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    QMat a = random_matrix(rng, 4, 3);
    QMat b = random_matrix(rng, 3, 5);
    QMat c = random_matrix(rng, 5, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK((a * b).conj_transpose() == b.conj_transpose() * a.conj_transpose());
    CHECK(QMat::identity(4) * a == a);
  }
}

TEST_CASE("rref, rank and nullspace", "[matrix]") {
  QMat m(3, 4);
  // Row space of rank 2: row3 = row1 + row2.
  GaussianRational v[3][4] = {{1, 2, 0, 1}, {0, 1, 1, -1}, {1, 3, 1, 0}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 4; ++j) m.at(i, j) = v[i][j];
  CHECK(m.rank() == 2);

  auto kernel = m.nullspace();
  REQUIRE(kernel.size() == 2);
  for (const auto& k : kernel) {
    auto image = m.apply(k);
    for (const auto& x : image) CHECK(x.is_zero());
  }

  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    QMat a = random_matrix(rng, 4, 6);
    CHECK(a.rank() + a.nullspace().size() == 6);
    for (const auto& k : a.nullspace()) {
      auto image = a.apply(k);
      for (const auto& x : image) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("solve and inverse", "[matrix]") {
  Rng rng(23);
  int solvable_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    QMat a = random_matrix(rng, 4, 4);
    std::vector<GaussianRational> x0;
    for (int k = 0; k < 4; ++k) x0.push_back(testutil::random_gaussian(rng));
    auto b = a.apply(x0);
    auto x = a.solve(b);
    REQUIRE(x.has_value());  // consistent by construction
    CHECK(a.apply(*x) == b);

    auto inv = a.inverse();
    if (inv) {
      ++solvable_seen;
      CHECK(*inv * a == QMat::identity(4));
      CHECK(a * *inv == QMat::identity(4));
    }
  }
  CHECK(solvable_seen > 0);

  // An inconsistent system reports failure.
  QMat a(2, 2);
  a.at(0, 0) = GaussianRational(1);
  a.at(1, 0) = GaussianRational(1);
  std::vector<GaussianRational> b{GaussianRational(1), GaussianRational(2)};
  CHECK_FALSE(a.solve(b).has_value());

  // Singular matrices have no inverse.
  QMat s(2, 2);
  s.at(0, 0) = GaussianRational(1);
  s.at(0, 1) = GaussianRational(2);
  s.at(1, 0) = GaussianRational(2);
  s.at(1, 1) = GaussianRational(4);
  CHECK_FALSE(s.inverse().has_value());
}
