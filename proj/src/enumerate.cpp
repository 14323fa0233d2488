#include "a1lab/enumerate.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "a1lab/univariate.hpp"

namespace a1lab {
namespace {

using u64 = std::uint64_t;

// A polynomial flattened to raw field words for the inner enumeration loop.
struct CompiledPoly {
  std::size_t num_vars = 0;
  std::vector<u64> coeffs;
  std::vector<std::uint16_t> exps;  // num_vars per term
  bool empty() const { return coeffs.empty(); }
};

// powers[i * stride + e] = a_i^e
u64 eval_compiled(const CompiledPoly& c, const std::vector<u64>& powers, std::size_t stride,
                  const GaloisField& f) {
  u64 acc = 0;
  for (std::size_t t = 0; t < c.coeffs.size(); ++t) {
    u64 m = c.coeffs[t];
    const std::uint16_t* e = &c.exps[t * c.num_vars];
    for (std::size_t i = 0; i < c.num_vars; ++i)
      if (e[i]) m = f.mul(m, powers[i * stride + e[i]]);
    acc = f.add(acc, m);
  }
  return acc;
}

void decode_projective(u64 index, int m, const GaloisField& field, std::vector<u64>& out) {
  const u64 q = field.q();
  out.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int lead = 0; lead <= m; ++lead) {
    u64 block = 1;
    for (int i = lead; i < m; ++i) block *= q;
    if (index < block) {
      out[static_cast<std::size_t>(lead)] = field.one_raw();
      for (int i = m; i > lead; --i) {
        out[static_cast<std::size_t>(i)] = index % q;
        index /= q;
      }
      return;
    }
    index -= block;
  }
  throw InputError("projective index out of range");
}

// Fibration of one equation over the last coordinate: coefficient polynomials by power.
struct Fibred {
  int degree = 0;
  std::vector<CompiledPoly> by_power;  // index e: coefficient of u_last^e
};

Fibred fibre(const MultiPoly<Gf>& g) {
  const std::size_t k = g.num_vars() - 1;
  Fibred out;
  out.degree = g.degree();
  std::vector<std::vector<MultiPoly<Gf>::Term>> parts(static_cast<std::size_t>(out.degree) + 1);
  for (const auto& t : g.terms()) {
    auto e = t.exps;
    const auto last = e[k];
    parts[last].push_back({e, t.coeff});
  }
  for (auto& terms : parts) {
    CompiledPoly c;
    c.num_vars = k;
    for (const auto& t : terms) {
      c.coeffs.push_back(t.coeff.raw());
      c.exps.insert(c.exps.end(), t.exps.begin(), t.exps.begin() + static_cast<std::ptrdiff_t>(k));
    }
    out.by_power.push_back(std::move(c));
  }
  return out;
}

template <class Fn>
void parallel_ranges(u64 total, unsigned threads, Fn&& fn) {
  if (threads <= 1 || total < 4096) {
    fn(0, total, 0u);
    return;
  }
  const u64 chunk = (total + threads - 1) / threads;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    const u64 lo = w * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, lo, hi, w] { fn(lo, hi, w); });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::uint64_t projective_size(std::uint64_t q, int m) {
  if (m < 0) return 0;
  unsigned __int128 total = 0, power = 1;
  for (int i = 0; i <= m; ++i) {
    total += power;
    power *= q;
    if (total > ~u64{0} || power > (static_cast<unsigned __int128>(1) << 100)) return ~u64{0};
  }
  return static_cast<u64>(total);
}

Point normalize_point(Point p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) {
      const Gf inv = p[i].inverse();
      for (std::size_t j = i; j < p.size(); ++j) p[j] *= inv;
      return p;
    }
  }
  throw InputError("the zero vector is not a projective point");
}

bool point_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), raw_less);
}

bool same_point(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  const Point na = normalize_point(a), nb = normalize_point(b);
  return std::equal(na.begin(), na.end(), nb.begin());
}

MultiPoly<Gf> lift(const MultiPoly<Gf>& f, const GaloisField& field) {
  return map_coefficients<Gf>(f, [&](const Gf& c) { return field.embed(c); });
}

std::vector<MultiPoly<Gf>> lift(std::span<const MultiPoly<Gf>> fs, const GaloisField& field) {
  std::vector<MultiPoly<Gf>> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(lift(f, field));
  return out;
}

Point lift_point(const Point& x, const GaloisField& field) {
  Point out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(field.embed(c));
  return out;
}

Point projective_point_at(std::uint64_t index, int m, const GaloisField& field) {
  std::vector<u64> raw;
  decode_projective(index, m, field, raw);
  Point out;
  for (u64 r : raw) out.push_back(field.element(r));
  return out;
}

bool vanishes_at(std::span<const MultiPoly<Gf>> system, const Point& x) {
  return std::all_of(system.begin(), system.end(), [&](const MultiPoly<Gf>& f) { return evaluate(f, x).is_zero(); });
}

Point random_vector(std::size_t n, const GaloisField& field, Rng& rng) {
  Point v(n, field.zero());
  bool nonzero = false;
  while (!nonzero) {
    for (auto& c : v) {
      c = field.element(rng.below(field.q()));
      nonzero = nonzero || !c.is_zero();
    }
  }
  return v;
}

std::vector<Point> enumerate_solutions(std::span<const MultiPoly<Gf>> system, std::size_t num_vars,
                                       const GaloisField& field, const EngineOptions& options) {
  if (num_vars == 0) throw InputError("enumeration needs at least one variable");
  std::vector<MultiPoly<Gf>> linear, rest;
  for (const auto& f0 : system) {
    if (f0.num_vars() != num_vars) throw InputError("equation variable count differs from the ambient space");
    if (f0.is_zero()) continue;
    if (!f0.is_homogeneous()) throw InputError("enumeration requires homogeneous equations");
    MultiPoly<Gf> f = lift(f0, field);
    if (f.degree() == 0) return {};
    (f.degree() == 1 ? linear : rest).push_back(std::move(f));
  }

  // Solution subspace of the linear equations, spanned by the columns of `basis`.
  Matrix<Gf> lin(static_cast<Eigen::Index>(linear.size()), static_cast<Eigen::Index>(num_vars));
  lin.setConstant(field.zero());
  for (std::size_t i = 0; i < linear.size(); ++i)
    for (const auto& t : linear[i].terms())
      for (std::size_t j = 0; j < num_vars; ++j)
        if (t.exps[j]) lin(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.coeff;
  const Matrix<Gf> basis = kernel_basis(lin, field.one());
  if (basis.cols() == 0) return {};
  const int sub_dim = static_cast<int>(basis.cols()) - 1;
  const auto kvars = static_cast<std::size_t>(basis.cols());

  std::vector<MultiPoly<Gf>> reduced;
  for (const auto& f : rest) {
    MultiPoly<Gf> g = compose_linear(f, basis);
    if (g.is_zero()) continue;
    if (g.degree() == 0) return {};
    reduced.push_back(std::move(g));
  }

  std::vector<std::vector<u64>> found;  // coordinates in the subspace (raw words)
  const unsigned threads = resolve_threads(options.threads);
  const GaloisField& fd = field;

  if (reduced.empty()) {
    const u64 count = projective_size(field.q(), sub_dim);
    if (count > options.cap)
      throw TooLargeError("enumeration of P^" + std::to_string(sub_dim) + "(" + field.spec().name() +
                          ") exceeds the point cap; use sampling");
    found.reserve(count);
    std::vector<u64> buf;
    for (u64 i = 0; i < count; ++i) {
      decode_projective(i, sub_dim, field, buf);
      found.push_back(buf);
    }
  } else if (sub_dim == 0) {
    std::vector<u64> one{field.one_raw()};
    Point pt{field.one()};
    if (vanishes_at(reduced, pt)) found.push_back(one);
  } else {
    const std::size_t k = kvars - 1;  // index of the fibre coordinate
    const u64 fibres = projective_size(field.q(), sub_dim - 1);
    if (fibres > options.cap)
      throw TooLargeError("enumeration of P^" + std::to_string(sub_dim) + "(" + field.spec().name() +
                          ") exceeds the point cap; use sampling");
    std::vector<Fibred> fibred;
    int max_deg = 0;
    for (const auto& g : reduced) {
      fibred.push_back(fibre(g));
      max_deg = std::max(max_deg, g.degree());
    }
    // The point at the tip of the fibration: (0, ..., 0, 1).
    {
      Point tip(kvars, field.zero());
      tip[k] = field.one();
      if (vanishes_at(reduced, tip)) {
        std::vector<u64> raw(kvars, 0);
        raw[k] = field.one_raw();
        found.push_back(raw);
      }
    }
    const auto stride = static_cast<std::size_t>(max_deg) + 1;
    std::vector<std::vector<std::vector<u64>>> per_worker(threads);
    parallel_ranges(fibres, threads, [&](u64 lo, u64 hi, unsigned w) {
      auto& out = per_worker[w];
      std::vector<u64> a, powers(k * stride);
      std::vector<UPoly> uni(fibred.size());
      std::vector<bool> ready(fibred.size());
      for (u64 idx = lo; idx < hi; ++idx) {
        decode_projective(idx, sub_dim - 1, fd, a);
        for (std::size_t i = 0; i < k; ++i) {
          powers[i * stride] = fd.one_raw();
          for (std::size_t e = 1; e < stride; ++e) powers[i * stride + e] = fd.mul(powers[i * stride + e - 1], a[i]);
        }
        std::fill(ready.begin(), ready.end(), false);
        auto univariate = [&](std::size_t j) -> const UPoly& {
          if (!ready[j]) {
            UPoly& u = uni[j];
            u.assign(fibred[j].by_power.size(), fd.zero());
            for (std::size_t e = 0; e < u.size(); ++e)
              if (!fibred[j].by_power[e].empty())
                u[e] = Gf(fd, eval_compiled(fibred[j].by_power[e], powers, stride, fd));
            ready[j] = true;
          }
          return uni[j];
        };
        std::size_t first = fibred.size();
        for (std::size_t j = 0; j < fibred.size(); ++j) {
          if (udegree(univariate(j)) >= 0) {
            first = j;
            break;
          }
        }
        auto accept = [&](u64 b) {
          const Gf bt(fd, b);
          for (std::size_t j = 0; j < fibred.size(); ++j) {
            if (j == first) continue;
            if (!uevaluate(univariate(j), bt).is_zero()) return;
          }
          std::vector<u64> pt(a);
          pt.push_back(b);
          out.push_back(std::move(pt));
        };
        if (first == fibred.size()) {
          for (u64 b = 0; b < fd.q(); ++b) accept(b);
        } else {
          for (const Gf& b : roots(univariate(first), fd)) accept(b.raw());
        }
      }
    });
    for (auto& part : per_worker) found.insert(found.end(), part.begin(), part.end());
  }

  std::vector<Point> out;
  out.reserve(found.size());
  for (const auto& raw : found) {
    Point u;
    u.reserve(raw.size());
    for (u64 r : raw) u.push_back(field.element(r));
    Vector<Gf> x = mat_vec(basis, std::span<const Gf>(u));
    out.push_back(normalize_point(Point(x.data(), x.data() + x.size())));
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<Point> sample_solutions(std::span<const MultiPoly<Gf>> system, std::size_t num_vars, int slice_dim,
                                    const GaloisField& field, Rng& rng, std::size_t want,
                                    const EngineOptions& options) {
  if (slice_dim < 0 || static_cast<std::size_t>(slice_dim) >= num_vars) throw InputError("invalid slice dimension");
  const auto lifted = lift(system, field);
  std::set<Point, decltype(&point_less)> seen(&point_less);
  const std::size_t attempts = 64 * std::max<std::size_t>(want, 1);
  for (std::size_t a = 0; a < attempts && seen.size() < want; ++a) {
    Matrix<Gf> frame(static_cast<Eigen::Index>(num_vars), slice_dim + 1);
    for (int c = 0; c <= slice_dim; ++c) {
      Point v = random_vector(num_vars, field, rng);
      for (std::size_t i = 0; i < num_vars; ++i) frame(static_cast<Eigen::Index>(i), c) = v[i];
    }
    if (rank(frame) != slice_dim + 1) continue;
    std::vector<MultiPoly<Gf>> restricted;
    for (const auto& f : lifted) restricted.push_back(compose_linear(f, frame));
    const auto local = enumerate_solutions(restricted, static_cast<std::size_t>(slice_dim) + 1, field, options);
    if (local.empty()) continue;
    const Point& u = local[rng.below(local.size())];
    Vector<Gf> x = mat_vec(frame, std::span<const Gf>(u));
    seen.insert(normalize_point(Point(x.data(), x.data() + x.size())));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace a1lab
