#pragma once

#include <functional>
#include <vector>

#include "a1lab/enumerate.hpp"
#include "a1lab/field.hpp"
#include "a1lab/multipoly.hpp"
#include "a1lab/rng.hpp"

namespace a1lab::testing {

inline Rational random_rational(Rng& rng) {
  const long num = static_cast<long>(rng.below(41)) - 20;
  const long den = static_cast<long>(rng.below(6)) + 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Gf random_element(const GaloisField& f, Rng& rng) { return f.element(rng.below(f.q())); }

/// All exponent vectors of total degree `deg` in `nvars` variables.
inline std::vector<Exponents> monomials(std::size_t nvars, int deg) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      e[i] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[i] = static_cast<std::uint16_t>(a);
      rec(i + 1, left - a);
    }
  };
  rec(0, deg);
  return out;
}

/// Random homogeneous polynomial; each monomial is kept with probability
/// `keep_percent` and gets a coefficient from `draw` (possibly zero).
template <class S, class Draw>
MultiPoly<S> random_homogeneous(std::size_t nvars, int deg, unsigned keep_percent, Rng& rng, Draw&& draw) {
  std::vector<typename MultiPoly<S>::Term> terms;
  for (auto& e : monomials(nvars, deg))
    if (rng.below(100) < keep_percent) terms.push_back({e, draw()});
  return MultiPoly<S>::from_terms(nvars, std::move(terms));
}

/// Every canonical point of P^m(F_q), in the order odometer-over-the-tail by leading position.
inline std::vector<Point> all_points(const GaloisField& f, int m) {
  std::vector<Point> out;
  for (int lead = 0; lead <= m; ++lead) {
    Point x(static_cast<std::size_t>(m) + 1, f.zero());
    x[static_cast<std::size_t>(lead)] = f.one();
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(m - lead), 0);
    while (true) {
      for (std::size_t i = 0; i < digits.size(); ++i) x[static_cast<std::size_t>(lead) + 1 + i] = f.element(digits[i]);
      out.push_back(x);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == f.q()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return out;
}

/// Brute-force common zeros, sorted canonically.
inline std::vector<Point> brute_force_zeros(const std::vector<MultiPoly<Gf>>& system, const GaloisField& f, int m) {
  std::vector<Point> out;
  for (auto& x : all_points(f, m)) {
    bool ok = true;
    for (const auto& g : system) ok = ok && evaluate(lift(g, f), x).is_zero();
    if (ok) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

inline MultiPoly<Gf> poly(const GaloisField& f, std::size_t nvars,
                          std::initializer_list<std::pair<long long, Exponents>> terms) {
  std::vector<MultiPoly<Gf>::Term> out;
  for (auto& [c, e] : terms) out.push_back({e, f.from_int(c)});
  return MultiPoly<Gf>::from_terms(nvars, std::move(out));
}

inline MultiPoly<Rational> qpoly(std::size_t nvars, std::initializer_list<std::pair<long, Exponents>> terms) {
  std::vector<MultiPoly<Rational>::Term> out;
  for (auto& [c, e] : terms) out.push_back({e, Rational(c)});
  return MultiPoly<Rational>::from_terms(nvars, std::move(out));
}

}  // namespace a1lab::testing
