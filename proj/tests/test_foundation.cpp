#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "lxkit/foundation.hpp"
#include "test_support.hpp"

using namespace lxkit::foundation;
using lxkit::testing::random_matrix;

namespace {

// Leibniz expansion over all permutations; independent of the Bareiss path.
Rational leibniz_det(const QMatrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("det examples") {
  CHECK(det(QMatrix{{1, 0}, {0, 1}}) == 1);
  CHECK(det(QMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(QMatrix{{2, 3}, {5, 7}}) == -1);
  CHECK(det(QMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(det(QMatrix(2, 3)), lxkit::DimensionError);
}

TEST_CASE("det agrees with Leibniz expansion on rational matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 5;
    QMatrix m = random_matrix(rng, n, n, 7, 4);
    if (trial % 7 == 0) {
      for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = m(0, c) * Rational(3, 2);  // singular
    }
    CHECK(det(m) == leibniz_det(m));
  }
}

TEST_CASE("det is multiplicative on random 4x4 rational matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    QMatrix a = random_matrix(rng, 4, 4, 9, 6), b = random_matrix(rng, 4, 4, 9, 6);
    CHECK(det(a * b) == det(a) * det(b));
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(QMatrix(2, 3)) == 0);
  CHECK(rank(QMatrix{{1, 0, -1}, {0, 1, 1}}) == 2);
  CHECK(rank(QMatrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("kernel_basis examples") {
  QMatrix m{{1, 0, -1}};
  QMatrix k = kernel_basis(m);
  CHECK(k.rows() == 2);
  CHECK(rank(k) == 2);
  CHECK((m * k.transpose()).is_zero());
  // spans {(1,0,1), (0,1,0)}: stacking adds no rank
  QMatrix expected{{1, 0, 1}, {0, 1, 0}};
  QMatrix stacked(4, 3);
  for (std::size_t c = 0; c < 3; ++c) {
    stacked(0, c) = k(0, c);
    stacked(1, c) = k(1, c);
    stacked(2, c) = expected(0, c);
    stacked(3, c) = expected(1, c);
  }
  CHECK(rank(stacked) == 2);

  CHECK(rank(kernel_basis(QMatrix(1, 3))) == 3);
  CHECK(kernel_basis(QMatrix{{2, 1}, {1, 1}}).rows() == 0);
}

TEST_CASE("rank-nullity and annihilation on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial * 3) % 7;
    QMatrix m = random_matrix(rng, r, c, 3, 3);
    if (trial % 5 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(1, j) = m(0, j) * 2;
    QMatrix k = kernel_basis(m);
    CHECK(rank(m) + k.rows() == c);
    CHECK(rank(k) == k.rows());
    if (k.rows() > 0) CHECK((m * k.transpose()).is_zero());
  }
}

TEST_CASE("colex_subsets") {
  std::vector<std::string> got;
  for (auto s : colex_subsets(5, 2)) got.push_back(s.to_string());
  CHECK(got == std::vector<std::string>{"1,2", "1,3", "2,3", "1,4", "2,4", "3,4", "1,5", "2,5", "3,5", "4,5"});
  CHECK(colex_subsets(3, 3) == std::vector<Subset>{Subset{1, 2, 3}});
  CHECK(colex_subsets(4, 1) == std::vector<Subset>{Subset{1}, Subset{2}, Subset{3}, Subset{4}});
  CHECK(colex_subsets(4, 0) == std::vector<Subset>{Subset{}});
}

TEST_CASE("colex_subsets: count, validity, strict colex order, rank") {
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) {
      auto subsets = colex_subsets(n, k);
      REQUIRE(subsets.size() == binomial(n, k));
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        CHECK(subsets[i].size() == k);
        CHECK(subsets[i].is_subset_of(Subset::range(n)));
        CHECK(colex_rank(subsets[i]) == i);
        if (i > 0) {
          // largest element of the symmetric difference lies in the later set
          Subset diff = (subsets[i] - subsets[i - 1]) | (subsets[i - 1] - subsets[i]);
          CHECK(subsets[i].contains(diff.max()));
        }
      }
    }
}

TEST_CASE("plucker_sign") {
  CHECK(plucker_sign(Subset{}, Subset{4, 5}, 4) == -1);
  CHECK(plucker_sign(Subset{1}, Subset{1, 2, 3, 4}, 2) == -1);
  CHECK(plucker_sign(Subset{1}, Subset{1, 2, 3, 4}, 3) == 1);
  for (auto a : colex_subsets(5, 2))
    for (auto b : colex_subsets(5, 3))
      for (int i = 1; i <= 5; ++i) CHECK(plucker_sign(a, b, i) * plucker_sign(a, b, i) == 1);
}

TEST_CASE("rational serialization") {
  CHECK(to_string(parse_rational("-3/2")) == "-3/2");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(parse_rational("6/-4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK_THROWS_AS(parse_rational("1/0"), lxkit::InputError);
  CHECK_THROWS_AS(parse_rational("abc"), lxkit::InputError);
  CHECK_THROWS_AS(parse_rational(""), lxkit::InputError);
}

TEST_CASE("subset parsing") {
  CHECK(Subset::parse("1,3,4") == Subset{1, 3, 4});
  CHECK(Subset::parse("") == Subset{});
  CHECK(Subset{2, 5}.complement(5) == Subset{1, 3, 4});
  CHECK_THROWS_AS(Subset::parse("1,,2"), lxkit::InputError);
  CHECK_THROWS_AS(Subset::parse("1,1"), lxkit::InputError);
  CHECK_THROWS_AS(Subset::parse("0"), lxkit::DimensionError);
}

TEST_CASE("PlueckerVector indexing") {
  PlueckerVector p(5, 2);
  p[Subset({2, 4})] = 7;
  CHECK(p.at_position(4) == 7);
  CHECK_THROWS_AS(p[Subset({1, 2, 3})], lxkit::DimensionError);
  CHECK_THROWS_AS(p[Subset({1, 6})], lxkit::DimensionError);
  CHECK(p.normalized_at(Subset{2, 4})[Subset({2, 4})] == 1);
  CHECK_THROWS_AS(p.normalized_at(Subset{1, 2}), lxkit::InputError);
}
