#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "a1lab/cipair.hpp"
#include "a1lab/moduli.hpp"
#include "support.hpp"

using namespace a1lab;
using namespace a1lab::testing;

namespace {

MultiPoly<Gf> fermat(const GaloisField& f, std::size_t nv, int deg) {
  std::vector<MultiPoly<Gf>::Term> t;
  for (std::size_t i = 0; i < nv; ++i) {
    Exponents e(nv, 0);
    e[i] = static_cast<std::uint16_t>(deg);
    t.push_back({e, f.one()});
  }
  return MultiPoly<Gf>::from_terms(nv, t);
}

MultiPoly<Gf> linear(const GaloisField& f, const std::vector<long long>& coeffs) {
  std::vector<MultiPoly<Gf>::Term> t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e(coeffs.size(), 0);
    e[i] = 1;
    t.push_back({e, f.from_int(coeffs[i])});
  }
  return MultiPoly<Gf>::from_terms(coeffs.size(), t);
}

// Diagonal quadric sum a_i x_i^2.
MultiPoly<Gf> diagonal(const GaloisField& f, const std::vector<long long>& a) {
  std::vector<MultiPoly<Gf>::Term> t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponents e(a.size(), 0);
    e[i] = 2;
    t.push_back({e, f.from_int(a[i])});
  }
  return MultiPoly<Gf>::from_terms(a.size(), t);
}

std::vector<PairType> all_types(int max_c, int max_d, int max_k, int max_n) {
  std::vector<PairType> out;
  for (int n = 2; n <= max_n; ++n) {
    for (int c = 1; c <= max_c && c + 1 <= n; ++c) {
      std::vector<int> deg(static_cast<std::size_t>(c), 2);
      while (true) {
        for (int k = 1; k <= max_k; ++k) out.push_back(PairType{n, deg, k});
        std::size_t i = 0;
        while (i < deg.size() && ++deg[i] > max_d) deg[i++] = 2;
        if (i == deg.size()) break;
      }
    }
  }
  return out;
}

std::uint64_t interior_count(const CIPair<Gf>& pair, const GaloisField& f) {
  const auto xs = enumerate_solutions(pair.F, pair.num_vars(), f);
  std::uint64_t n = 0;
  for (const auto& x : xs)
    if (!evaluate(pair.G, x).is_zero()) ++n;
  return n;
}

}  // namespace

TEST_CASE("criteria on documented types") {
  const auto a = criteria(PairType{4, {2}, 1});
  CHECK(a.d == 3);
  CHECK(a.log_fano);
  CHECK(a.a1_simply_connected_bound);
  CHECK(a.cover_bound);
  CHECK_FALSE(a.affine_space);

  const auto b = criteria(PairType{7, {2, 2}, 1});
  CHECK(b.sum_of_squares == 8);
  CHECK_FALSE(b.a1_simply_connected_bound);
  CHECK(b.d == 5);
  CHECK(b.log_fano);

  const auto c = criteria(PairType{9, {3}, 1});
  CHECK(c.a1_simply_connected_bound);
  CHECK(c.cover_bound);
  CHECK(c.log_fano);

  const auto d = criteria(PairType{4, {2}, 2});
  CHECK_FALSE(d.cover_bound);  // 4 + 4 > 5
  CHECK_FALSE(d.a1_simply_connected_bound);
}

TEST_CASE("criteria are monotone in n and in the degrees") {
  for (const auto& t : all_types(3, 4, 3, 11)) {
    const auto base = criteria(t);
    PairType bigger_n = t;
    ++bigger_n.n;
    const auto up = criteria(bigger_n);
    CHECK((!base.log_fano || up.log_fano));
    CHECK((!base.a1_simply_connected_bound || up.a1_simply_connected_bound));
    CHECK((!base.cover_bound || up.cover_bound));
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
      PairType bigger_d = t;
      ++bigger_d.degrees[i];
      const auto heavier = criteria(bigger_d);
      CHECK((base.log_fano || !heavier.log_fano));
      CHECK((base.a1_simply_connected_bound || !heavier.a1_simply_connected_bound));
      CHECK((base.cover_bound || !heavier.cover_bound));
    }
    CHECK(criteria(t).log_fano == base.log_fano);
  }
}

TEST_CASE("cover bound of a pair equals the simple-connectedness bound of its cover") {
  int checked = 0;
  for (const auto& t : all_types(3, 4, 3, 12)) {
    const auto ct = cover_type(t);
    CHECK(ct.n == t.n + 1);
    CHECK(ct.k == 1);
    CHECK(ct.degrees.back() == t.k);
    CHECK(criteria(t).cover_bound == criteria(ct).a1_simply_connected_bound);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(check_type(PairType{3, {}, 1}), InputError);
  CHECK_THROWS_AS(check_type(PairType{1, {2}, 1}), InputError);
  CHECK_THROWS_AS(check_type(PairType{3, {2, 2, 2}, 1}), InputError);
  CHECK_THROWS_AS(check_type(PairType{3, {1}, 1}), InputError);
  CHECK_THROWS_AS(check_type(PairType{3, {2}, 0}), InputError);
  CHECK_NOTHROW(check_type(PairType{3, {1}, 1}, true));
  const GaloisField& f5 = GaloisField::get(5);
  CHECK_THROWS_AS(make_pair(PairType{3, {2}, 1}, {linear(f5, {1, 1, 0, 0})}, linear(f5, {1, 0, 0, 0}), f5.spec()),
                  InputError);
  CHECK_THROWS_AS(make_pair(PairType{3, {2}, 1}, {fermat(f5, 4, 2) + linear(f5, {1, 0, 0, 0})},
                            linear(f5, {1, 0, 0, 0}), f5.spec()),
                  InputError);
  CHECK(PairType{4, {2, 3}, 1}.d() == 6);
}

TEST_CASE("validate_pair: smooth quadric surface over F_5") {
  const GaloisField& f5 = GaloisField::get(5);
  const auto pair = make_pair(PairType{3, {2}, 1}, {poly(f5, 4, {{1, {1, 0, 0, 1}}, {-1, {0, 1, 1, 0}}})},
                              linear(f5, {1, 0, 0, 1}), f5.spec());
  const auto r = validate_pair(pair, f5, 16);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.solutions_found == 36);
  CHECK(r.codim_observed == 1);
  // every point of X independently has rank 1
  for (const auto& x : brute_force_zeros(pair.F, f5, 3)) CHECK(jacobian_rank_at(pair.F, x) == 1);
}

TEST_CASE("validate_pair: a line pair fails at its node") {
  const GaloisField& f5 = GaloisField::get(5);
  const auto pair =
      make_pair(PairType{2, {2}, 1}, {poly(f5, 3, {{1, {1, 1, 0}}})}, linear(f5, {1, 1, 1}), f5.spec());
  const auto r = validate_pair(pair, f5, 16);
  CHECK(r.verdict == Verdict::fail);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == Point{f5.zero(), f5.zero(), f5.one()});
}

TEST_CASE("validate_pair: Fermat cubic threefold over F_7") {
  const GaloisField& f7 = GaloisField::get(7);
  const auto X = fermat(f7, 5, 3);
  SUBCASE("boundary x0 + x1 is singular at [1:-1:0:0:0]") {
    const auto pair = make_pair(PairType{4, {3}, 1}, {X}, linear(f7, {1, 1, 0, 0, 0}), f7.spec());
    const auto r = validate_pair(pair, f7, 64);
    CHECK(r.verdict == Verdict::fail);
    REQUIRE(r.witness.has_value());
    const Point node{f7.one(), f7.from_int(-1), f7.zero(), f7.zero(), f7.zero()};
    CHECK(*r.witness == node);
    const std::vector<MultiPoly<Gf>> sys{pair.F[0], pair.G};
    CHECK(jacobian_rank_at(sys, node) == 1);
  }
  SUBCASE("boundary x0 + ... + x4 passes") {
    const auto pair = make_pair(PairType{4, {3}, 1}, {X}, linear(f7, {1, 1, 1, 1, 1}), f7.spec());
    const auto r = validate_pair(pair, f7, 64);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.solutions_found == brute_force_zeros(pair.F, f7, 4).size());
  }
}

TEST_CASE("validate_pair: no points gives an inconclusive verdict") {
  // Norm form of F_7(2^(1/3)) over F_7: x^3 + 2 y^3 + 4 z^3 - 6 x y z has no nontrivial zeros.
  const GaloisField& f7 = GaloisField::get(7);
  const auto F = poly(f7, 3, {{1, {3, 0, 0}}, {2, {0, 3, 0}}, {4, {0, 0, 3}}, {-6, {1, 1, 1}}});
  REQUIRE(brute_force_zeros({F}, f7, 2).empty());
  const auto pair = make_pair(PairType{2, {3}, 1}, {F}, linear(f7, {1, 0, 0}), f7.spec());
  const auto r = validate_pair(pair, f7, 8);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("validate_pair samples when the ambient space is large") {
  const GaloisField& f = GaloisField::get(7, 3);
  const auto pair = make_pair(PairType{4, {3}, 1}, {fermat(f, 5, 3)}, linear(f, {1, 1, 1, 1, 1}), f.spec());
  const auto a = validate_pair(pair, f, 20, 9);
  const auto b = validate_pair(pair, f, 20, 9);
  CHECK(a.verdict == Verdict::pass);
  CHECK(a.points_examined > 0);
  CHECK(a.solutions == b.solutions);
  for (const auto& x : a.solutions) CHECK(evaluate(pair.F[0], x).is_zero());
}

TEST_CASE("reduction of rational pairs") {
  const auto F = qpoly(4, {{1, {1, 0, 0, 1}}, {-1, {0, 1, 1, 0}}});
  auto G = qpoly(4, {{1, {1, 0, 0, 0}}, {1, {0, 0, 0, 1}}});
  const auto good = make_pair(PairType{3, {2}, 1}, {F}, G, FieldSpec::rationals());
  const GaloisField& f5 = GaloisField::get(5);
  CHECK(validate_pair(good, f5, 8).verdict == Verdict::pass);

  std::vector<MultiPoly<Rational>::Term> t{{{1, 0, 0, 0}, Rational(1, 5)}, {{0, 0, 0, 1}, Rational(1)}};
  const auto bad = make_pair(PairType{3, {2}, 1}, {F}, MultiPoly<Rational>::from_terms(4, t), FieldSpec::rationals());
  CHECK_THROWS_AS(reduce_mod(bad, f5), ReductionError);
  CHECK_NOTHROW(reduce_mod(bad, GaloisField::get(7)));
  CHECK(reduce_rational(Rational(3, 4), GaloisField::get(7)) == GaloisField::get(7).from_int(6));
  CHECK(reduce_rational(Rational(-1, 2), GaloisField::get(3, 2)) == GaloisField::get(3, 2).one());

  const auto vanishing = make_pair(PairType{3, {2}, 1}, {qpoly(4, {{5, {2, 0, 0, 0}}})}, G, FieldSpec::rationals());
  CHECK_THROWS_AS(reduce_mod(vanishing, f5), ReductionError);
}

TEST_CASE("random_pair is deterministic and validated") {
  const GaloisField& f5 = GaloisField::get(5);
  const auto a = random_pair(PairType{3, {2}, 1}, f5, 42);
  const auto b = random_pair(PairType{3, {2}, 1}, f5, 42);
  CHECK(a.F == b.F);
  CHECK(a.G == b.G);
  CHECK(validate_pair(a, f5, 16).verdict == Verdict::pass);
  const auto c = random_pair(PairType{3, {2}, 1}, f5, 43);
  CHECK_FALSE((c.F == a.F && c.G == a.G));

  const GaloisField& f7 = GaloisField::get(7);
  const auto cubic = random_pair(PairType{4, {3}, 1}, f7, 1);
  CHECK(cubic.type == PairType{4, {3}, 1});
  CHECK(cubic.F[0].degree() == 3);
  CHECK(validate_pair(cubic, f7, 16).verdict == Verdict::pass);

  CHECK_THROWS_AS(random_pair(PairType{2, {2, 2}, 1}, f5, 1), InputError);
}

TEST_CASE("universal cover construction") {
  const GaloisField& f7 = GaloisField::get(7);
  SUBCASE("Fermat quadric with a diagonal boundary quadric") {
    const auto pair = make_pair(PairType{4, {2}, 2}, {fermat(f7, 5, 2)}, diagonal(f7, {0, 1, 2, 3, 4}), f7.spec());
    REQUIRE(validate_pair(pair, f7, 64).verdict == Verdict::pass);
    const auto cover = universal_cover(pair);
    CHECK(cover.type == PairType{5, {2, 2}, 1});
    CHECK(cover.F[0] == extend_variables(pair.F[0], 6));
    Exponents y2(6, 0);
    y2[5] = 2;
    CHECK(cover.F[1] == MultiPoly<Gf>::monomial(6, y2, f7.one()) - extend_variables(pair.G, 6));
    CHECK(cover.G == MultiPoly<Gf>::variable(6, 5, f7.one()));
    CHECK(validate_pair(cover, f7, 64).verdict == Verdict::pass);
  }
  SUBCASE("k = 1: the interior of the cover is a graph over the interior") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const GaloisField& f5 = GaloisField::get(5);
      const auto pair = random_pair(PairType{3, {2}, 1}, f5, seed);
      const auto cover = universal_cover(pair);
      CHECK(cover.type == PairType{4, {2, 1}, 1});
      CHECK(interior_count(cover, f5) == interior_count(pair, f5));
    }
  }
  SUBCASE("characteristic dividing k") {
    const GaloisField& f3 = GaloisField::get(3);
    const auto pair = make_pair(PairType{3, {2}, 3}, {fermat(f3, 4, 2)}, fermat(f3, 4, 3), f3.spec());
    CHECK_THROWS_AS(universal_cover(pair), ConstructionError);
  }
  SUBCASE("rational pairs keep exact coefficients") {
    const auto F = qpoly(5, {{1, {2, 0, 0, 0, 0}}, {1, {0, 2, 0, 0, 0}}, {-1, {0, 0, 2, 0, 0}}, {3, {0, 0, 0, 1, 1}}});
    const auto G = qpoly(5, {{1, {2, 0, 0, 0, 0}}, {-2, {0, 0, 0, 2, 0}}});
    const auto cover = universal_cover(make_pair(PairType{4, {2}, 2}, {F}, G, FieldSpec::rationals()));
    CHECK(cover.type == PairType{5, {2, 2}, 1});
    CHECK(cover.F[1].coefficient(Exponents{0, 0, 0, 2, 0, 0}) == 2);
  }
}

TEST_CASE("covers of validated pairs validate") {
  struct Case {
    PairType type;
    std::uint64_t p;
  };
  const std::vector<Case> cases{{{3, {2}, 1}, 5}, {{3, {2}, 2}, 5}, {{3, {3}, 1}, 5}, {{3, {2}, 2}, 7}, {{4, {2}, 2}, 5}};
  int validated = 0;
  for (std::uint64_t seed = 0; validated < 20; ++seed) {
    const auto& c = cases[seed % cases.size()];
    const GaloisField& f = GaloisField::get(c.p);
    const auto pair = random_pair(c.type, f, 1000 + seed);
    REQUIRE(validate_pair(pair, f, 64).verdict == Verdict::pass);
    const auto r = validate_pair(universal_cover(pair), f, 64, seed);
    CAPTURE(c.type.to_string());
    CHECK(r.verdict == Verdict::pass);
    ++validated;
  }
}

TEST_CASE("lines through random pairs of points are rarely contained in X") {
  const GaloisField& f7 = GaloisField::get(7);
  const auto pair = random_pair(PairType{4, {3}, 1}, f7, 17);
  Rng rng(8);
  const auto probe = probe_lines_through_pairs(pair, f7, 60, rng);
  CHECK(probe.trials == 60);
  MESSAGE("lines contained in X: " << probe.contained << " of " << probe.trials);
  CHECK(probe.contained <= 6);
}

TEST_CASE("line containment via the line expansion matches direct substitution") {
  const GaloisField& f5 = GaloisField::get(5);
  const auto pair = make_pair(PairType{3, {2}, 1}, {poly(f5, 4, {{1, {1, 0, 0, 1}}, {-1, {0, 1, 1, 0}}})},
                              linear(f5, {1, 0, 0, 1}), f5.spec());
  CHECK(line_in_interior(pair, Point{f5.one(), f5.zero(), f5.zero(), f5.zero()},
                         Point{f5.zero(), f5.one(), f5.zero(), f5.zero()}));
  const auto pts = brute_force_zeros(pair.F, f5, 3);
  int contained = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const bool a = line_in_interior(pair, pts[i], pts[j]);
      CHECK(a == line_lies_in(pair.F, std::span<const Gf>(pts[i]), std::span<const Gf>(pts[j])));
      contained += a;
    }
  }
  // each point lies on 2 rulings with 5 further points each: 36 * 10 / 2 pairs
  CHECK(contained == 180);
}
