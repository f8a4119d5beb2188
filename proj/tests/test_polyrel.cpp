#include <set>

#include "doctest.h"
#include "lxkit/polyrel.hpp"
#include "test_support.hpp"

using namespace lxkit::polyrel;
using lxkit::foundation::colex_subsets;
using lxkit::foundation::QMatrix;

namespace {

Monomial mono(std::initializer_list<PQVar> vars) { return Monomial(std::vector<PQVar>(vars)); }

SparsePoly term(Rational c, std::initializer_list<PQVar> vars) { return SparsePoly::monomial(mono(vars), c); }

// Maximal minors of a k x n matrix, straight from det of column selections.
PlueckerVector minors(const QMatrix& m) {
  const int k = static_cast<int>(m.rows()), n = static_cast<int>(m.cols());
  PlueckerVector q(n, k);
  for (auto s : colex_subsets(n, k)) {
    std::vector<std::size_t> cols;
    for (int e : s.elements()) cols.push_back(static_cast<std::size_t>(e - 1));
    q[s] = lxkit::foundation::det(m.select_columns(cols));
  }
  return q;
}

// Random rank-(d+1) subspace, normalized at [d+1] when possible.
PlueckerVector random_grassmann_point(std::mt19937_64& rng, int n, int d) {
  for (;;) {
    QMatrix m = lxkit::testing::random_full_rank(rng, static_cast<std::size_t>(d + 1), static_cast<std::size_t>(n));
    PlueckerVector q = minors(m);
    if (sgn(q[Subset::range(d + 1)]) != 0) return q.normalized_at(Subset::range(d + 1));
  }
}

}  // namespace

TEST_CASE("plucker_relation examples") {
  // m=2, A={1}, B={2,3,4}: exponents 2, 3, 4 for i = 2, 3, 4.
  SparsePoly r = plucker_relation(Subset{1}, Subset{2, 3, 4}, VarKind::P);
  CHECK(r == term(1, {P({1, 2}), P({3, 4})}) - term(1, {P({1, 3}), P({2, 4})}) + term(1, {P({1, 4}), P({2, 3})}));
  CHECK(plucker_relation(Subset{1}, Subset{1, 2, 3}, VarKind::P).is_zero());
  SparsePoly r2 = plucker_relation(Subset{5}, Subset{1, 2, 3}, VarKind::P);
  CHECK(r2 == -term(1, {P({1, 5}), P({2, 3})}) + term(1, {P({2, 5}), P({1, 3})}) - term(1, {P({3, 5}), P({1, 2})}));
  CHECK_THROWS_AS(plucker_relation(Subset{1}, Subset{1, 2}, VarKind::P), lxkit::DimensionError);
}

TEST_CASE("Pluecker relations vanish on Grassmann points") {
  std::mt19937_64 rng(3);
  for (int n = 4; n <= 6; ++n) {
    PlueckerVector q = minors(lxkit::testing::random_full_rank(rng, 3, static_cast<std::size_t>(n)));
    for (auto a : colex_subsets(n, 2))
      for (auto b : colex_subsets(n, 4)) CHECK(evaluate(plucker_relation(a, b, VarKind::Q), q).is_zero());
  }
}

TEST_CASE("incidence_relation examples") {
  CHECK(incidence_relation(Subset{1}, Subset{1, 2, 3, 4}) ==
        -term(1, {P({1, 2}), Q({1, 3, 4})}) + term(1, {P({1, 3}), Q({1, 2, 4})}) - term(1, {P({1, 4}), Q({1, 2, 3})}));
  // i = 1, 3, 4 with exponents 1, 4, 5
  CHECK(incidence_relation(Subset{2}, Subset{1, 2, 3, 4}) ==
        -term(1, {P({1, 2}), Q({2, 3, 4})}) + term(1, {P({2, 3}), Q({1, 2, 4})}) - term(1, {P({2, 4}), Q({1, 2, 3})}));
  CHECK(incidence_relation(Subset{1, 2, 3}, Subset{1, 2, 3, 4, 5}).size() == 2);
  CHECK_THROWS_AS(incidence_relation(Subset{1, 2}, Subset{1, 2, 3}), lxkit::DimensionError);
}

TEST_CASE("incidence relations vanish for a subspace contained in X") {
  // Rows of W_k span a subspace of the rowspace of W.
  std::mt19937_64 rng(8);
  for (int n = 4; n <= 6; ++n) {
    QMatrix w = lxkit::testing::random_full_rank(rng, 3, static_cast<std::size_t>(n));
    PlueckerVector q = minors(w);
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<std::size_t> keep;
      for (std::size_t r = 0; r < 3; ++r)
        if (r != k) keep.push_back(r);
      PlueckerVector p = minors(w.select_rows(keep));
      for (auto a : colex_subsets(n, 1))
        for (auto b : colex_subsets(n, 4)) {
          Rational total = 0;
          for (const auto& [sub, c] : linear_coefficients(evaluate(incidence_relation(a, b), q))) total += c * p[sub];
          CHECK(total == 0);
        }
    }
  }
}

TEST_CASE("rrel base cases") {
  LaurentRel r = rrel(Subset{1}, Subset{4}, 2, 5);
  CHECK(r.denom_power == 0);
  CHECK(r.numerator ==
        term(1, {P({1, 2}), Q({1, 3, 4})}) - term(1, {P({1, 3}), Q({1, 2, 4})}) + term(1, {P({1, 4}), Q({1, 2, 3})}));
  CHECK(rrel(Subset{1, 2}, Subset{}, 2, 5).numerator.is_zero());
  CHECK_THROWS_AS(rrel(Subset{4}, Subset{5}, 2, 5), lxkit::DimensionError);
  CHECK_THROWS_AS(rrel(Subset{1}, Subset{2}, 2, 5), lxkit::DimensionError);
  CHECK_THROWS_AS(rrel(Subset{1}, Subset{4, 5}, 2, 5), lxkit::DimensionError);
}

TEST_CASE("rrel with A empty reduces to the stated form modulo three 3-term relations") {
  LaurentRel raw = rrel(Subset{}, Subset{4, 5}, 2, 5);
  REQUIRE(raw.denom_power == 1);
  const Subset top{1, 2, 3};
  const SparsePoly qtop = SparsePoly::variable(Q(top));
  SparsePoly reduced = term(1, {P({4, 5}), Q({1, 2, 3})}) - term(1, {P({1, 2}), Q({3, 4, 5})}) +
                       term(1, {P({1, 3}), Q({2, 4, 5})}) - term(1, {P({2, 3}), Q({1, 4, 5})});
  // Q_{[3]\s∪b2} Q_{[3]\t∪b1} - Q_{[3]\t∪b2} Q_{[3]\s∪b1} - Q_{123} Q_{[3]\{s,t}∪b1∪b2}
  auto rel = [&](int s, int t) {
    return term(1, {Q(top.without(s).with(5)), Q(top.without(t).with(4))}) -
           term(1, {Q(top.without(t).with(5)), Q(top.without(s).with(4))}) -
           term(1, {Q(top), Q(top.without(s).without(t).with(4).with(5))});
  };
  SparsePoly combo = -SparsePoly::variable(P({1, 2})) * rel(1, 2) + SparsePoly::variable(P({1, 3})) * rel(1, 3) -
                     SparsePoly::variable(P({2, 3})) * rel(2, 3);
  CHECK(raw.numerator - qtop * reduced == combo);

  // Each stated relation is a genuine Pluecker relation among the Q's.
  for (auto [s, t] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    bool found = false;
    for (auto a : colex_subsets(5, 2))
      for (auto b : colex_subsets(5, 4)) {
        SparsePoly pr = plucker_relation(a, b, VarKind::Q);
        if (pr == rel(s, t) || pr == -rel(s, t)) found = true;
      }
    CHECK(found);
  }

  // And the two forms agree as linear forms at points of Gr(3,5).
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    PlueckerVector q = random_grassmann_point(rng, 5, 2);
    CHECK(evaluate(raw, q) == evaluate(reduced, q));
  }
}

TEST_CASE("evaluate") {
  std::mt19937_64 rng(4);
  PlueckerVector q = random_grassmann_point(rng, 5, 2);
  auto coeffs = linear_coefficients(evaluate(rrel(Subset{1}, Subset{4}, 2, 5), q));
  CHECK(coeffs.size() == 3);
  CHECK(coeffs[Subset({1, 2})] == q[Subset({1, 3, 4})]);
  CHECK(coeffs[Subset({1, 3})] == -q[Subset({1, 2, 4})]);
  CHECK(coeffs[Subset({1, 4})] == 1);

  PlueckerVector zero(5, 3);
  CHECK(evaluate(incidence_relation(Subset{1}, Subset{1, 2, 3, 4}), zero).is_zero());
  CHECK_THROWS_AS(evaluate(rrel(Subset{1}, Subset{4}, 2, 5), zero), lxkit::InputError);
  CHECK_THROWS_AS(linear_coefficients(incidence_relation(Subset{1}, Subset{1, 2, 3, 4})), lxkit::InputError);
}

TEST_CASE("evaluate is multiplicative on Q-only polynomials") {
  std::mt19937_64 rng(9);
  PlueckerVector q(6, 3);
  for (auto s : colex_subsets(6, 3)) q[s] = lxkit::testing::random_rational(rng);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = colex_subsets(6, 2)[static_cast<std::size_t>(trial % 15)];
    auto b = colex_subsets(6, 4)[static_cast<std::size_t>((trial * 7) % 15)];
    SparsePoly f = plucker_relation(a, b, VarKind::Q) + SparsePoly::constant(trial);
    SparsePoly g = SparsePoly::variable(Q({1, 2, 3})) - SparsePoly::variable(Q({2, 4, 6}), 3);
    Rational ef = evaluate(f, q).coefficient(Monomial{});
    Rational eg = evaluate(g, q).coefficient(Monomial{});
    CHECK(evaluate(f * g, q).coefficient(Monomial{}) == ef * eg);
  }
}

TEST_CASE("support of rrel: it uses only P_{A∪B} and P_{[d+1]\\i}") {
  std::mt19937_64 rng(12);
  for (int d = 1; d <= 3; ++d)
    for (int n = d + 2; n <= 7; ++n) {
      PlueckerVector q(n, d + 1);
      for (auto s : colex_subsets(n, d + 1)) q[s] = lxkit::testing::random_rational(rng);
      const Subset top = Subset::range(d + 1);
      q[top] = 1;
      for (auto l : colex_subsets(n, d)) {
        if (l.is_subset_of(top)) continue;
        Subset a = l & top, b = l - top;
        auto coeffs = linear_coefficients(evaluate(rrel(a, b, d, n), q));
        CHECK(coeffs[l] == 1);
        for (const auto& [var, c] : coeffs) {
          if (var == l) continue;
          bool allowed = var.is_subset_of(top) && !a.contains((top - var).min());
          CHECK_MESSAGE(allowed, "unexpected variable P" << var.to_string() << " in rrel(" << a.to_string() << "; "
                                                         << b.to_string() << ")");
        }
      }
    }
}

TEST_CASE("LaurentRel power is minimal") {
  for (int d = 1; d <= 3; ++d)
    for (auto l : colex_subsets(d + 3, d)) {
      const Subset top = Subset::range(d + 1);
      if (l.is_subset_of(top)) continue;
      LaurentRel r = rrel(l & top, l - top, d, d + 3);
      if (r.denom_power == 0) continue;
      bool some_free = false;
      for (const auto& [m, c] : r.numerator.terms()) some_free |= m.exponent_of(Q(top)) == 0;
      CHECK(some_free);
    }
}

TEST_CASE("in2pl identity: canonical instance and negative control") {
  auto check = verify_in2pl(Subset{4}, Subset{1, 2, 3}, Subset{1, 2, 3}, 4);
  CHECK(check.holds);
  CHECK(check.residual.is_zero());
  auto [lhs, rhs] = detail::in2pl_sides(Subset{4}, Subset{1, 2, 3}, Subset{1, 2, 3}, 4, true);
  CHECK_FALSE((lhs - rhs).is_zero());
  CHECK_THROWS_AS(verify_in2pl(Subset{1}, Subset{1, 2, 3}, Subset{1, 2, 3}, 1), lxkit::DimensionError);
}

TEST_CASE("in2pl identity holds on every admissible tuple, n <= 6, d in {1,2}") {
  std::size_t tuples = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = d + 1; n <= 6; ++n)
      for (auto a_set : colex_subsets(n, d - 1))
        for (auto b_set : colex_subsets(n, d + 1))
          for (auto c_set : colex_subsets(n, d + 1))
            for (int a : (a_set - c_set).elements()) {
              ++tuples;
              auto r = verify_in2pl(a_set, b_set, c_set, a);
              CHECK_MESSAGE(r.holds, "A=" << a_set.to_string() << " B=" << b_set.to_string()
                                          << " C=" << c_set.to_string() << " a=" << a);
              for (int j : (c_set - a_set).elements()) {
                auto parities = in2pl_psi_parities(a_set, b_set, c_set, a, j);
                CHECK(std::set<int>(parities.begin(), parities.end()).size() == 1);
              }
            }
  CHECK(tuples > 0);
}

TEST_CASE("moveB identity holds on every admissible tuple, n <= 6, d in {1,2}") {
  std::size_t tuples = 0;
  for (int d = 1; d <= 2; ++d)
    for (int n = d + 1; n <= 6; ++n)
      for (auto a_set : colex_subsets(n, d - 1))
        for (auto b_set : colex_subsets(n, d + 1))
          for (auto c_set : colex_subsets(n, d + 1)) {
            if (!a_set.is_subset_of(c_set)) continue;
            for (int b : (b_set - c_set).elements()) {
              ++tuples;
              auto r = verify_moveB(a_set, b_set, c_set, b);
              CHECK_MESSAGE(r.holds, "A=" << a_set.to_string() << " B=" << b_set.to_string()
                                          << " C=" << c_set.to_string() << " b=" << b);
            }
          }
  CHECK(tuples > 0);
  auto good = verify_moveB(Subset{1}, Subset{1, 4, 5}, Subset{1, 2, 3}, 4);
  CHECK(good.holds);
  auto [lhs, rhs] = detail::moveB_sides(Subset{1}, Subset{1, 4, 5}, Subset{1, 2, 3}, 4, true);
  CHECK_FALSE((lhs - rhs).is_zero());
}

TEST_CASE("saturation certificates") {
  SUBCASE("base case A ⊆ C = B") {
    auto cert = saturation_certificate(Subset{1}, Subset{1, 2, 3}, Subset{1, 2, 3});
    CHECK(cert.exponent == 0);
    CHECK(cert.combination.empty());
    CHECK(replay(cert).holds);
  }
  SUBCASE("single in2pl step") {
    auto cert = saturation_certificate(Subset{4}, Subset{1, 2, 3}, Subset{1, 2, 3});
    CHECK(cert.exponent == 1);
    CHECK_FALSE(cert.combination.empty());
    CHECK(replay(cert).holds);
  }
  SUBCASE("exhaustive replay, C = [d+1]") {
    for (int d = 1; d <= 2; ++d)
      for (int n = d + 1; n <= 5; ++n) {
        const Subset c_set = Subset::range(d + 1);
        for (auto a_set : colex_subsets(n, d - 1))
          for (auto b_set : colex_subsets(n, d + 1)) {
            auto cert = saturation_certificate(a_set, b_set, c_set);
            CHECK(replay(cert).holds);
            CHECK(static_cast<int>(cert.exponent) <= (a_set - c_set).size() + (c_set - b_set).size() + 1);
          }
      }
  }
  SUBCASE("tampered certificate fails replay") {
    auto cert = saturation_certificate(Subset{4}, Subset{2, 3, 5}, Subset{1, 2, 3});
    REQUIRE(replay(cert).holds);
    cert.combination.front().coefficient *= Rational(-1);
    CHECK_FALSE(replay(cert).holds);
  }
}
