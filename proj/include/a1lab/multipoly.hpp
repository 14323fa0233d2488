#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "a1lab/errors.hpp"
#include "a1lab/field.hpp"

namespace a1lab {

using Exponents = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial in a fixed number of variables.
///
/// Canonical form: terms sorted by exponent vector in decreasing lexicographic
/// order, no two terms with the same exponents, no zero coefficients. Equality
/// is equality of canonical forms.
template <class S>
class MultiPoly {
 public:
  struct Term {
    Exponents exps;
    S coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MultiPoly() = default;
  explicit MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static MultiPoly from_terms(std::size_t num_vars, std::vector<Term> terms) {
    MultiPoly out(num_vars);
    for (const auto& t : terms)
      if (t.exps.size() != num_vars) throw InputError("exponent vector length does not match variable count");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exps > b.exps; });
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().exps == t.exps) {
        out.terms_.back().coeff += t.coeff;
      } else {
        out.terms_.push_back(std::move(t));
      }
    }
    out.drop_zeros();
    return out;
  }
  static MultiPoly constant(std::size_t num_vars, const S& c) {
    return from_terms(num_vars, {Term{Exponents(num_vars, 0), c}});
  }
  static MultiPoly monomial(std::size_t num_vars, Exponents exps, const S& c) {
    return from_terms(num_vars, {Term{std::move(exps), c}});
  }
  static MultiPoly variable(std::size_t num_vars, std::size_t i, const S& one) {
    Exponents e(num_vars, 0);
    e.at(i) = 1;
    return monomial(num_vars, std::move(e), one);
  }

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, total(t.exps));
    return d;
  }
  bool is_homogeneous() const {
    const int d = degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return total(t.exps) == d; });
  }
  /// Coefficient of the first term in canonical order.
  const S& leading_coefficient() const {
    if (terms_.empty()) throw InputError("zero polynomial has no leading coefficient");
    return terms_.front().coeff;
  }
  S coefficient(const Exponents& e) const {
    for (const auto& t : terms_)
      if (t.exps == e) return t.coeff;
    return S(0);
  }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    std::map<Exponents, S, std::greater<>> acc;
    Exponents e(a.num_vars_);
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(x.exps[i] + y.exps[i]);
        auto [it, inserted] = acc.try_emplace(e, x.coeff * y.coeff);
        if (!inserted) it->second += x.coeff * y.coeff;
      }
    }
    MultiPoly out(a.num_vars_);
    out.terms_.reserve(acc.size());
    for (auto& [exps, c] : acc) out.terms_.push_back(Term{exps, std::move(c)});
    out.drop_zeros();
    return out;
  }
  friend MultiPoly operator*(const S& c, const MultiPoly& a) {
    MultiPoly out = a;
    for (auto& t : out.terms_) t.coeff = c * t.coeff;
    out.drop_zeros();
    return out;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  static int total(const Exponents& e) {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  }

 private:
  static void check_arity(const MultiPoly& a, const MultiPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw InputError("polynomials live in different variable counts");
  }
  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_arity(a, b);
    MultiPoly out(a.num_vars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exps > b.terms_[j].exps)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exps > a.terms_[i].exps) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        out.terms_.push_back(std::move(t));
      } else {
        S c = subtract ? S(a.terms_[i].coeff - b.terms_[j].coeff) : S(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!a1lab::is_zero(c)) out.terms_.push_back(Term{a.terms_[i].exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }
  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return a1lab::is_zero(t.coeff); });
  }

  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
};

/// Exponent vectors of total degree `deg` in `num_vars` variables, in decreasing lexicographic order.
inline std::vector<Exponents> monomials_of_degree(std::size_t num_vars, int deg) {
  std::vector<Exponents> out;
  if (num_vars == 0) return out;
  Exponents e(num_vars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == num_vars) {
      e[i] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[i] = static_cast<std::uint16_t>(a);
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, deg);
  return out;
}

/// Value of f at a point with one coordinate per variable.
template <class S>
S evaluate(const MultiPoly<S>& f, std::span<const S> point) {
  if (point.size() != f.num_vars())
    throw InputError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                     std::to_string(f.num_vars()) + " variables");
  if (f.is_zero()) return point.empty() ? S(0) : like(point[0], 0);
  const int deg = f.degree();
  std::vector<std::vector<S>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].reserve(static_cast<std::size_t>(deg) + 1);
    powers[i].push_back(like(point[i], 1));
    for (int e = 1; e <= deg; ++e) powers[i].push_back(powers[i].back() * point[i]);
  }
  S acc = like(f.terms().front().coeff, 0);
  for (const auto& t : f.terms()) {
    S m = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (t.exps[i]) m *= powers[i][t.exps[i]];
    acc += m;
  }
  return acc;
}

template <class S>
S evaluate(const MultiPoly<S>& f, const std::vector<S>& point) {
  return evaluate(f, std::span<const S>(point));
}

/// Partial derivative with respect to variable `var`.
template <class S>
MultiPoly<S> derivative(const MultiPoly<S>& f, std::size_t var) {
  if (var >= f.num_vars()) throw InputError("derivative variable out of range");
  std::vector<typename MultiPoly<S>::Term> out;
  for (const auto& t : f.terms()) {
    if (t.exps[var] == 0) continue;
    auto e = t.exps;
    const long long k = e[var]--;
    out.push_back({std::move(e), like(t.coeff, k) * t.coeff});
  }
  return MultiPoly<S>::from_terms(f.num_vars(), std::move(out));
}

/// Apply `fn` to every coefficient (reduction mod p, lifting into an extension).
template <class T, class S, class Fn>
MultiPoly<T> map_coefficients(const MultiPoly<S>& f, Fn&& fn) {
  std::vector<typename MultiPoly<T>::Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back({t.exps, fn(t.coeff)});
  return MultiPoly<T>::from_terms(f.num_vars(), std::move(out));
}

/// Same polynomial viewed in `num_vars` >= f.num_vars() variables (new variables appended).
template <class S>
MultiPoly<S> extend_variables(const MultiPoly<S>& f, std::size_t num_vars) {
  if (num_vars < f.num_vars()) throw InputError("cannot drop variables");
  std::vector<typename MultiPoly<S>::Term> out;
  for (const auto& t : f.terms()) {
    auto e = t.exps;
    e.resize(num_vars, 0);
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly<S>::from_terms(num_vars, std::move(out));
}

/// f(M v): substitutes x_i = sum_j M(i, j) v_j. M has f.num_vars() rows; the
/// result lives in M.cols() variables.
template <class S>
MultiPoly<S> compose_linear(const MultiPoly<S>& f, const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m) {
  if (static_cast<std::size_t>(m.rows()) != f.num_vars()) throw InputError("substitution matrix has wrong row count");
  const auto k = static_cast<std::size_t>(m.cols());
  MultiPoly<S> result(k);
  if (f.is_zero()) return result;
  const S one = like(f.leading_coefficient(), 1);
  std::vector<std::vector<MultiPoly<S>>> powers(f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    std::vector<typename MultiPoly<S>::Term> lin;
    for (std::size_t j = 0; j < k; ++j) {
      Exponents e(k, 0);
      e[j] = 1;
      lin.push_back({std::move(e), m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
    powers[i].push_back(MultiPoly<S>::constant(k, one));
    powers[i].push_back(MultiPoly<S>::from_terms(k, std::move(lin)));
  }
  auto power = [&](std::size_t i, std::size_t e) -> const MultiPoly<S>& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };
  for (const auto& t : f.terms()) {
    MultiPoly<S> term = MultiPoly<S>::constant(k, t.coeff);
    for (std::size_t i = 0; i < f.num_vars(); ++i)
      if (t.exps[i]) term *= power(i, t.exps[i]);
    result += term;
  }
  return result;
}

/// Multiply out a scalar multiple so that the leading coefficient is one.
template <class S>
MultiPoly<S> normalized(const MultiPoly<S>& f) {
  if (f.is_zero()) return f;
  return inverse(f.leading_coefficient()) * f;
}

/// True when a = c * b for a nonzero scalar c (both zero counts as proportional).
template <class S>
bool proportional(const MultiPoly<S>& a, const MultiPoly<S>& b) {
  return normalized(a) == normalized(b);
}

// ---------------------------------------------------------------------------

/// Expansion of f(x_0 + t, x_1, ..., x_n) = sum_j P_j t^(e - j) where P_j is
/// homogeneous of degree j (or zero). coefficients[j] holds P_j.
template <class S>
struct LineExpansion {
  int base_degree = 0;
  std::vector<MultiPoly<S>> coefficients;
};

/// Line restriction by substitution x_0 -> x_0 + t and collection in t; valid in
/// every characteristic (binomial coefficients are reduced, never divided).
template <class S>
LineExpansion<S> restrict_to_line(const MultiPoly<S>& f) {
  if (f.is_zero() || !f.is_homogeneous()) throw InputError("restrict_to_line needs a nonzero homogeneous polynomial");
  if (f.num_vars() == 0) throw InputError("restrict_to_line needs at least one variable");
  const int e = f.degree();
  if (e < 1) throw InputError("restrict_to_line needs degree >= 1");
  // Pascal's triangle over the integers; entries are reduced into the field on use.
  std::vector<std::vector<long long>> binom(static_cast<std::size_t>(e) + 1);
  for (int a = 0; a <= e; ++a) {
    binom[a].assign(static_cast<std::size_t>(a) + 1, 1);
    for (int b = 1; b < a; ++b) binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
  }
  std::vector<std::vector<typename MultiPoly<S>::Term>> buckets(static_cast<std::size_t>(e) + 1);
  for (const auto& t : f.terms()) {
    const int a = t.exps[0];
    for (int b = 0; b <= a; ++b) {
      auto exps = t.exps;
      exps[0] = static_cast<std::uint16_t>(a - b);
      // t^b multiplies P_(e-b)
      buckets[static_cast<std::size_t>(e - b)].push_back({std::move(exps), like(t.coeff, binom[a][b]) * t.coeff});
    }
  }
  LineExpansion<S> out;
  out.base_degree = e;
  for (auto& bucket : buckets) out.coefficients.push_back(MultiPoly<S>::from_terms(f.num_vars(), std::move(bucket)));
  return out;
}

}  // namespace a1lab
