#include "a1lab/univariate.hpp"

#include <algorithm>

namespace a1lab {

int udegree(const UPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (!a[i].is_zero()) return static_cast<int>(i);
  return -1;
}

void utrim(UPoly& a) { a.resize(static_cast<std::size_t>(udegree(a) + 1)); }

UPoly umul(const UPoly& a, const UPoly& b) {
  const int da = udegree(a), db = udegree(b);
  if (da < 0 || db < 0) return {};
  UPoly c(static_cast<std::size_t>(da + db) + 1, Gf(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j <= db; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

UPoly umod(UPoly a, const UPoly& m) {
  const int dm = udegree(m);
  if (dm < 0) throw InputError("polynomial division by zero");
  utrim(a);
  const Gf lead_inv = m[dm].inverse();
  while (udegree(a) >= dm) {
    const int da = udegree(a);
    const Gf c = a[da] * lead_inv;
    const int shift = da - dm;
    for (int i = 0; i <= dm; ++i) a[shift + i] -= c * m[i];
    utrim(a);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Gf inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

UPoly upowmod(UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly r{like(m[udegree(m)], 1)};
  r = umod(r, m);
  base = umod(std::move(base), m);
  while (e) {
    if (e & 1) r = umod(umul(r, base), m);
    e >>= 1;
    if (e) base = umod(umul(base, base), m);
  }
  return r;
}

Gf uevaluate(const UPoly& a, const Gf& t) {
  Gf acc = like(t, 0);
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
  return acc;
}

namespace {

// Split a squarefree product of distinct linear factors (Cantor-Zassenhaus, odd q).
void split_linear(const UPoly& g, const GaloisField& field, std::vector<Gf>& out) {
  const int d = udegree(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  for (std::uint64_t shift = 0; shift < field.q(); ++shift) {
    UPoly x_plus{field.element(shift), field.one()};
    UPoly w = upowmod(x_plus, (field.q() - 1) / 2, g);
    if (w.empty()) w = {field.zero()};
    w[0] -= field.one();
    UPoly h = ugcd(g, w);
    const int dh = udegree(h);
    if (dh > 0 && dh < d) {
      split_linear(h, field, out);
      // g / h
      UPoly quotient;
      {
        UPoly rem = g;
        utrim(rem);
        quotient.assign(static_cast<std::size_t>(d - dh) + 1, field.zero());
        const Gf lead_inv = h[dh].inverse();
        while (udegree(rem) >= dh) {
          const int dr = udegree(rem);
          const Gf c = rem[dr] * lead_inv;
          quotient[dr - dh] = c;
          for (int i = 0; i <= dh; ++i) rem[dr - dh + i] -= c * h[i];
          utrim(rem);
        }
      }
      split_linear(quotient, field, out);
      return;
    }
  }
  throw ConsistencyError("root splitting failed");
}

}  // namespace

std::vector<Gf> roots(const UPoly& a, const GaloisField& field) {
  UPoly f = a;
  utrim(f);
  if (f.empty()) throw InputError("roots of the zero polynomial");
  std::vector<Gf> out;
  if (udegree(f) == 0) return out;
  if (field.q() <= 64 || field.p() == 2) {
    for (std::uint64_t raw = 0; raw < field.q(); ++raw) {
      const Gf t = field.element(raw);
      if (uevaluate(f, t).is_zero()) out.push_back(t);
    }
    return out;
  }
  // g = gcd(f, x^q - x) collects the distinct rational roots.
  UPoly xq = upowmod(UPoly{field.zero(), field.one()}, field.q(), f);
  xq.resize(std::max<std::size_t>(xq.size(), 2), field.zero());
  xq[1] -= field.one();
  UPoly g = ugcd(f, xq);
  if (udegree(g) <= 0) return out;
  split_linear(g, field, out);
  std::sort(out.begin(), out.end(), raw_less);
  return out;
}

UPoly substitute(const MultiPoly<Gf>& f, std::span<const UPoly> values, const GaloisField& field) {
  if (values.size() != f.num_vars()) throw InputError("substitute: wrong number of values");
  const int deg = f.degree();
  std::vector<std::vector<UPoly>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    powers[i].push_back(UPoly{field.one()});
    for (int e = 1; e <= deg; ++e) powers[i].push_back(umul(powers[i].back(), values[i]));
  }
  UPoly acc;
  for (const auto& t : f.terms()) {
    UPoly m{field.embed(t.coeff)};
    for (std::size_t i = 0; i < values.size(); ++i)
      if (t.exps[i]) m = umul(m, powers[i][t.exps[i]]);
    if (acc.size() < m.size()) acc.resize(m.size(), field.zero());
    for (std::size_t i = 0; i < m.size(); ++i) acc[i] += m[i];
  }
  return acc;
}

}  // namespace a1lab
