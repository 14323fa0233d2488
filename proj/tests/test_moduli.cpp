#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <set>

#include "a1lab/cipair.hpp"
#include "a1lab/geomcheck.hpp"
#include "a1lab/moduli.hpp"
#include "support.hpp"

using namespace a1lab;
using namespace a1lab::testing;

namespace {

// Random pair with no smoothness requirement, for bookkeeping-only checks in large P^n.
CIPair<Gf> raw_random_pair(const PairType& t, const GaloisField& f, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t nv = static_cast<std::size_t>(t.n) + 1;
  auto draw = [&](int deg) {
    return random_homogeneous<Gf>(nv, deg, 100, rng, [&] { return random_element(f, rng); });
  };
  std::vector<MultiPoly<Gf>> F;
  for (int d : t.degrees) F.push_back(draw(d));
  return make_pair(t, F, draw(t.k), f.spec());
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Point to_point(const Vector<Gf>& v) { return normalize_point(Point(v.data(), v.data() + v.size())); }

}  // namespace

TEST_CASE("expected dimension of lines") {
  CHECK(expected_dimension_lines(PairType{4, {3}, 1}) == 0);
  CHECK(expected_dimension_lines(PairType{4, {2}, 1}) == 1);
  CHECK(expected_dimension_lines(PairType{3, {3}, 1}) == -1);
}

TEST_CASE("line moduli through a point: types and the built-in identities") {
  const GaloisField& f7 = GaloisField::get(7);
  Rng rng(1);
  SUBCASE("(3;1) in P^4") {
    const auto pair = random_pair(PairType{4, {3}, 1}, f7, 3);
    const auto x = general_point(pair, f7, rng).point;
    const auto pres = line_moduli_through_point(pair, x);
    CHECK(pres.declared_type == std::vector<int>{1, 2, 3, 1});
    CHECK(pres.equations.size() == 4);
    CHECK(pres.expected_dim == 0);
    CHECK(pres.degree_product() == 6);
    CHECK(pres.equations[2] == pair.F[0]);  // P_{1,3} = F_1
    CHECK(pres.equations[3] == pair.G);     // Q_1 = G
  }
  SUBCASE("(2;1) in P^3") {
    const auto pair = random_pair(PairType{3, {2}, 1}, GaloisField::get(5), 3);
    const auto x = general_point(pair, GaloisField::get(5), rng).point;
    const auto pres = line_moduli_through_point(pair, x);
    CHECK(pres.declared_type == std::vector<int>{1, 2, 1});
    CHECK(pres.expected_dim == 0);
  }
  SUBCASE("(2,2;2) in P^6 keeps every Q_j") {
    const auto pair = raw_random_pair(PairType{6, {2, 2}, 2}, f7, 4);
    const auto x = general_point(pair, f7, rng).point;
    const auto pres = line_moduli_through_point(pair, x);
    CHECK(pres.declared_type == std::vector<int>{1, 2, 1, 2, 1, 2});
    CHECK(pres.labels.back() == "Q_2");
    CHECK(pres.equations.back() == pair.G);
    CHECK(pres.expected_dim == 0);
    for (std::size_t i = 0; i < pres.equations.size(); ++i)
      if (!pres.equations[i].is_zero()) CHECK(pres.equations[i].degree() == pres.declared_type[i]);
  }
  SUBCASE("preconditions") {
    const auto pair = random_pair(PairType{4, {3}, 1}, f7, 3);
    const auto on_d = enumerate_solutions(pair.boundary_system(), 5, f7);
    REQUIRE_FALSE(on_d.empty());
    CHECK_THROWS_AS(line_moduli_through_point(pair, on_d.front()), PreconditionError);
    Point off;
    for (const auto& y : all_points(f7, 4)) {
      if (!evaluate(pair.F[0], y).is_zero()) {
        off = y;
        break;
      }
    }
    CHECK_THROWS_AS(line_moduli_through_point(pair, off), PreconditionError);
    CHECK_THROWS_AS(line_moduli_through_point(pair, Point(5, f7.zero())), InputError);
  }
}

TEST_CASE("line moduli: the normalized frame carries the transformed G as Q_k") {
  const GaloisField& f7 = GaloisField::get(7);
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto pair = random_pair(PairType{4, {2}, 2}, f7, seed);
    const auto x = general_point(pair, f7, rng).point;
    const auto frame = frame_at(std::span<const Gf>(x));
    const auto pres = line_moduli_through_point(pair, x, LineModuliOptions{false});
    CHECK(pres.equations.back() == compose_linear(pair.G, frame));
    CHECK(pres.equations.size() == 4);
    // P_{i0} = F_i(x) = 0 and Q_0 = G(x) != 0, read off directly.
    CHECK(evaluate(pair.F[0], x).is_zero());
    CHECK_FALSE(evaluate(pair.G, x).is_zero());
  }
}

TEST_CASE("line moduli: different coordinate changes give the same point sets") {
  const GaloisField& f5 = GaloisField::get(5);
  const GaloisField& f25 = GaloisField::get(5, 2);
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pair = random_pair(PairType{4, {2}, 1}, f5, seed);
    const auto x = general_point(pair, f5, rng).point;
    const auto a = frame_at(std::span<const Gf>(x));
    Matrix<Gf> b;
    while (true) {
      b = Matrix<Gf>(5, 5);
      for (int i = 0; i < 5; ++i) {
        b(i, 0) = x[static_cast<std::size_t>(i)];
        for (int j = 1; j < 5; ++j) b(i, j) = random_element(f5, rng);
      }
      if (rank<Gf>(b) == 5) break;
    }
    const auto pa = line_moduli_in_frame(pair, a), pb = line_moduli_in_frame(pair, b);
    CHECK(pa.equations == pb.equations);
    const auto sa = enumerate_solutions(lift(std::span<const MultiPoly<Gf>>(pa.equations), f25), 5, f25);
    const auto sb = enumerate_solutions(lift(std::span<const MultiPoly<Gf>>(pb.equations), f25), 5, f25);
    CHECK(sa == sb);

    const auto na = line_moduli_in_frame(pair, a, LineModuliOptions{false});
    const auto nb = line_moduli_in_frame(pair, b, LineModuliOptions{false});
    std::vector<Point> ma, mb;
    Matrix<Gf> a25 = a, b25 = b;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        a25(i, j) = f25.embed(a(i, j));
        b25(i, j) = f25.embed(b(i, j));
      }
    for (const auto& u : enumerate_solutions(lift(std::span<const MultiPoly<Gf>>(na.equations), f25), 5, f25))
      ma.push_back(to_point(mat_vec(a25, std::span<const Gf>(u))));
    for (const auto& u : enumerate_solutions(lift(std::span<const MultiPoly<Gf>>(nb.equations), f25), 5, f25))
      mb.push_back(to_point(mat_vec(b25, std::span<const Gf>(u))));
    std::sort(ma.begin(), ma.end(), point_less);
    std::sort(mb.begin(), mb.end(), point_less);
    CHECK(ma == sa);
    CHECK(mb == sa);
  }
}

TEST_CASE("line moduli over Q commute with reduction mod p") {
  // x0^2 + x1^2 - 2 x2^2 + x3 x4 (3/2) with boundary x0 + 2 x1 - x4 / 3 through (1, 1, 1, 0, 0).
  const auto F = qpoly(5, {{1, {2, 0, 0, 0, 0}}, {1, {0, 2, 0, 0, 0}}, {-2, {0, 0, 2, 0, 0}}, {1, {0, 0, 0, 1, 1}}});
  std::vector<MultiPoly<Rational>::Term> g{{{1, 0, 0, 0, 0}, Rational(1)},
                                           {{0, 1, 0, 0, 0}, Rational(2)},
                                           {{0, 0, 0, 0, 1}, Rational(-1, 3)}};
  const auto pair = make_pair(PairType{4, {2}, 1}, {F}, MultiPoly<Rational>::from_terms(5, g), FieldSpec::rationals());
  const std::vector<Rational> x{1, 1, 1, 0, 0};
  const auto pq = line_moduli_through_point(pair, x);
  CHECK(pq.equations.back() == pair.G);
  for (std::uint64_t p : {5, 7, 11}) {
    const GaloisField& f = GaloisField::get(p);
    const auto red = reduce_mod(pair, f);
    Point xr;
    for (const auto& c : x) xr.push_back(reduce_rational(c, f));
    const auto pf = line_moduli_through_point(red, xr);
    REQUIRE(pf.equations.size() == pq.equations.size());
    for (std::size_t i = 0; i < pf.equations.size(); ++i)
      CHECK(pf.equations[i] ==
            map_coefficients<Gf>(pq.equations[i], [&](const Rational& c) { return reduce_rational(c, f); }));
  }
}

TEST_CASE("node locus: types, counts and the redundancy log") {
  const GaloisField& f7 = GaloisField::get(7);
  Rng rng(4);
  struct Case {
    PairType type;
    std::vector<int> delta;
    int expected_dim;
  };
  const std::vector<Case> cases{{{9, {3}, 1}, {1, 1, 2, 2, 3, 1}, 3},
                                {{4, {2}, 1}, {1, 1, 2, 1}, 0},
                                {{9, {2, 2}, 1}, {1, 1, 2, 1, 1, 2, 1}, 2},
                                {{7, {2, 3}, 1}, {1, 1, 2, 1, 1, 2, 2, 3, 1}, -2}};
  for (const auto& c : cases) {
    CAPTURE(c.type.to_string());
    const auto pair = raw_random_pair(c.type, f7, 10);
    const auto pts = general_point_pair(pair, f7, rng);
    const auto delta = conic_boundary_locus(pair, std::span<const Gf>(pts.p), std::span<const Gf>(pts.q));
    CHECK(delta.declared_type == c.delta);
    CHECK(delta_type(c.type) == c.delta);
    CHECK(delta.expected_dim == c.expected_dim);
    int count = 1;
    for (int d : c.type.degrees) count += 2 * d - 1;
    CHECK(static_cast<int>(delta.equations.size()) == count);
    REQUIRE(delta.redundancy_log.size() == c.type.degrees.size() + 1);
    for (const auto& e : delta.redundancy_log) CHECK(e.side == 'q');
    CHECK(delta.equations.back() == lift(pair.G, *pts.field));
    for (std::size_t i = 0; i < delta.equations.size(); ++i)
      for (std::size_t j = i + 1; j < delta.equations.size(); ++j)
        CHECK_FALSE(proportional(delta.equations[i], delta.equations[j]));
  }
}

TEST_CASE("node locus: errors") {
  const GaloisField& f7 = GaloisField::get(7);
  Rng rng(5);
  const auto pair = random_pair(PairType{4, {2}, 1}, f7, 2);
  const auto pts = general_point_pair(pair, f7, rng);
  CHECK_THROWS_AS(conic_boundary_locus(pair, pts.p, pts.p), InputError);
  const auto k2 = random_pair(PairType{4, {2}, 2}, f7, 2);
  const auto pts2 = general_point_pair(k2, f7, rng);
  CHECK_THROWS_AS(conic_boundary_locus(k2, pts2.p, pts2.q), UnsupportedError);
  // two points on a ruling of x0 x3 - x1 x2
  const auto quadric = make_pair(PairType{3, {2}, 1}, {poly(f7, 4, {{1, {1, 0, 0, 1}}, {-1, {0, 1, 1, 0}}})},
                                 poly(f7, 4, {{1, {1, 0, 0, 0}}, {1, {0, 1, 0, 0}}, {1, {0, 0, 1, 0}}, {1, {0, 0, 0, 1}}}),
                                 f7.spec());
  const Point p{f7.one(), f7.zero(), f7.zero(), f7.zero()}, q{f7.one(), f7.one(), f7.zero(), f7.zero()};
  CHECK_THROWS_AS(conic_boundary_locus(quadric, p, q), InputError);
}

TEST_CASE("conic fiber type and degree metadata") {
  const auto a = conic_fiber_type(PairType{9, {3}, 1});
  CHECK(a.type == std::vector<int>{1, 1, 2, 2, 3});
  CHECK(a.degree_sum == 9);
  CHECK(a.rationally_connected_bound);
  const auto b = conic_fiber_type(PairType{4, {2}, 1});
  CHECK(b.type == std::vector<int>{1, 1, 2});
  CHECK(b.rationally_connected_bound);
  const auto c = conic_fiber_type(PairType{7, {2, 2}, 1});
  CHECK(c.type == std::vector<int>{1, 1, 2, 1, 1, 2});
  CHECK(c.degree_sum == 8);
  CHECK_FALSE(c.rationally_connected_bound);
  CHECK_THROWS_AS(conic_fiber_type(PairType{4, {2}, 2}), UnsupportedError);
  for (int n = 3; n <= 12; ++n)
    for (int d = 2; d <= 4; ++d) {
      const PairType t{n, {d}, 1};
      CHECK(conic_fiber_type(t).degree_sum == t.sum_of_squares());
      CHECK(conic_fiber_type(t).rationally_connected_bound == criteria(t).a1_simply_connected_bound);
    }

  for (const PairType& t : {PairType{4, {2}, 1}, PairType{9, {3}, 1}, PairType{9, {2, 2}, 1}}) {
    const auto m = delta_degree_metadata(t);
    CHECK(m.delta_prime_degree == 2);
    CHECK(m.delta_degree == 1);
    CHECK(m.pullback_multiplicity == 2);
    CHECK(m.delta_prime_degree == m.pullback_multiplicity * m.delta_degree);
  }
}

TEST_CASE("conic reducibility: hand examples") {
  const GaloisField& f5 = GaloisField::get(5);
  auto c = [&](int a1, int a2, int a3, int a4) {
    return ConicCoefficients<Gf>{f5.from_int(a1), f5.from_int(a2), f5.from_int(a3), f5.from_int(a4)};
  };
  CHECK(conic_reducibility(c(0, 1, 0, 0)) == ConicVerdict::contains_line_pq);
  CHECK(conic_reducibility(c(0, 1, 1, 0)) == ConicVerdict::contains_line_pq);
  CHECK(conic_reducibility(c(1, 1, 1, 1)) == ConicVerdict::reducible);  // (x + y)(x + z)
  CHECK(conic_reducibility(c(0, 0, 0, 1)) == ConicVerdict::reducible);  // y z
  CHECK(conic_reducibility(c(1, 0, 0, 1)) == ConicVerdict::irreducible);
  CHECK_THROWS_AS(conic_reducibility(c(0, 0, 0, 0)), InputError);
  const GaloisField& f4 = GaloisField::get(2, 2);
  CHECK_THROWS_AS(conic_reducibility(ConicCoefficients<Gf>{f4.one(), f4.one(), f4.one(), f4.one()}),
                  UnsupportedError);
  CHECK(conic_reducibility(ConicCoefficients<Rational>{1, 2, 3, 6}) == ConicVerdict::reducible);
  CHECK(conic_reducibility(ConicCoefficients<Rational>{1, 2, 3, -6}) == ConicVerdict::irreducible);
}

TEST_CASE("conic reducibility over F_3 agrees with factorization over F_9, settling the sign") {
  const GaloisField& f3 = GaloisField::get(3);
  const GaloisField& f9 = GaloisField::get(3, 2);
  // All products of two linear forms over F_9, normalized, as (x^2, y^2, z^2, xy, xz, yz) coefficient tuples.
  std::set<std::array<std::uint64_t, 6>> products;
  for (std::uint64_t u = 1; u < 729; ++u) {
    const Gf u1 = f9.element(u % 9), u2 = f9.element(u / 9 % 9), u3 = f9.element(u / 81);
    for (std::uint64_t v = 1; v < 729; ++v) {
      const Gf v1 = f9.element(v % 9), v2 = f9.element(v / 9 % 9), v3 = f9.element(v / 81);
      std::vector<Gf> coeffs{u1 * v1, u2 * v2, u3 * v3, u1 * v2 + u2 * v1, u1 * v3 + u3 * v1, u2 * v3 + u3 * v2};
      std::array<std::uint64_t, 6> key{};
      Gf lead = f9.zero();
      for (auto& c : coeffs)
        if (lead.is_zero() && !c.is_zero()) lead = c;
      for (std::size_t i = 0; i < 6; ++i) key[i] = (coeffs[i] / lead).raw();
      products.insert(key);
    }
  }
  int classes = 0, agree = 0, printed_agree = 0, minus_agree = 0;
  std::string printed_counterexample;
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    const Gf a1 = f3.element(idx % 3), a2 = f3.element(idx / 3 % 3), a3 = f3.element(idx / 9 % 3),
             a4 = f3.element(idx / 27);
    if (a1.is_zero() && a2.is_zero() && a3.is_zero() && a4.is_zero()) continue;
    ++classes;
    std::vector<Gf> coeffs{a1, f3.zero(), f3.zero(), a2, a3, a4};
    Gf lead = f3.zero();
    for (auto& c : coeffs)
      if (lead.is_zero() && !c.is_zero()) lead = c;
    std::array<std::uint64_t, 6> key{};
    for (std::size_t i = 0; i < 6; ++i) key[i] = f9.embed(coeffs[i] / lead).raw();
    const bool factors = products.count(key) > 0;
    const auto verdict = conic_reducibility(ConicCoefficients<Gf>{a1, a2, a3, a4});
    agree += (verdict != ConicVerdict::irreducible) == factors;
    const bool printed = a4.is_zero() || (a1 * a4 + a2 * a3).is_zero();
    const bool minus = a4.is_zero() || (a1 * a4 - a2 * a3).is_zero();
    printed_agree += printed == factors;
    minus_agree += minus == factors;
    if (printed != factors && printed_counterexample.empty())
      printed_counterexample = "(" + a1.to_string() + "," + a2.to_string() + "," + a3.to_string() + "," +
                               a4.to_string() + ")";
  }
  CHECK(classes == 80);
  CHECK(agree == 80);
  CHECK(minus_agree == 80);
  CHECK(printed_agree < 80);
  MESSAGE("Gram rank agrees with F_9 factorization on " << agree << "/80 coefficient vectors");
  MESSAGE("condition a1*a4 - a2*a3 = 0 (or a4 = 0) agrees on " << minus_agree << "/80");
  MESSAGE("condition a1*a4 + a2*a3 = 0 (or a4 = 0) agrees on " << printed_agree << "/80; first disagreement "
                                                                << printed_counterexample);
}

TEST_CASE("conic reducibility is invariant under rescaling") {
  const GaloisField& f7 = GaloisField::get(7);
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    ConicCoefficients<Gf> c{random_element(f7, rng), random_element(f7, rng), random_element(f7, rng),
                            random_element(f7, rng)};
    if (c.a1.is_zero() && c.a2.is_zero() && c.a3.is_zero() && c.a4.is_zero()) continue;
    const Gf s = f7.element(1 + rng.below(6));
    CHECK(conic_reducibility(c) == conic_reducibility(ConicCoefficients<Gf>{s * c.a1, s * c.a2, s * c.a3, s * c.a4}));
  }
}
