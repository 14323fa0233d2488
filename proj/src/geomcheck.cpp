#include "a1lab/geomcheck.hpp"

#include <algorithm>
#include <map>

#include "a1lab/linalg.hpp"
#include "a1lab/univariate.hpp"

namespace a1lab {
namespace {

using u64 = std::uint64_t;

Gf dot(const Point& h, const Point& x) {
  Gf acc = h[0] * x[0];
  for (std::size_t i = 1; i < h.size(); ++i) acc += h[i] * x[i];
  return acc;
}

// Random point of X(F_q) at which X is smooth and G does not vanish.
std::optional<Point> draw_interior(const CIPair<Gf>& pair, const std::vector<MultiPoly<Gf>>& F,
                                   const GaloisField& field, Rng& rng, const EngineOptions& options) {
  const auto pts = sample_solutions(F, pair.num_vars(), pair.type.codim(), field, rng, 1, options);
  if (pts.empty()) return std::nullopt;
  const Point& x = pts.front();
  if (evaluate(lift(pair.G, field), x).is_zero()) return std::nullopt;
  if (jacobian_rank_at(F, x) != pair.type.codim()) return std::nullopt;
  return x;
}

std::vector<const GaloisField*> field_ladder(const CIPair<Gf>& pair, const GaloisField& field) {
  std::vector<const GaloisField*> out{&field};
  if (pair.field.r == 1 && pair.field.p == field.p())
    for (int r = field.r() + 1; r <= 4; ++r) out.push_back(&GaloisField::get(field.p(), r));
  return out;
}

UPoly line_poly(const Gf& slope, const Gf& base) { return UPoly{base, slope}; }

}  // namespace

DimensionEstimate dimension_by_slicing(std::span<const MultiPoly<Gf>> system, std::size_t num_vars,
                                       const GaloisField& field, int trials, Rng& rng, const EngineOptions& options) {
  if (trials < 1) throw InputError("dimension estimate needs at least one trial");
  const auto pts = enumerate_solutions(system, num_vars, field, options);
  DimensionEstimate out;
  for (int t = 0; t < trials; ++t) {
    if (pts.empty()) {
      out.votes.push_back(-1);
      continue;
    }
    std::vector<Point> cur = pts;
    int cuts = 0;
    while (true) {
      int survived = 0;
      std::vector<Point> first;
      for (int c = 0; c < kSliceCandidates; ++c) {
        const Point h = random_vector(num_vars, field, rng);
        std::vector<Point> next;
        for (const auto& x : cur)
          if (dot(h, x).is_zero()) next.push_back(x);
        if (next.empty()) continue;
        if (survived++ == 0) first = std::move(next);
      }
      if (3 * survived < kSliceCandidates) break;
      cur = std::move(first);
      ++cuts;
    }
    out.votes.push_back(cuts);
  }
  const auto [lo, hi] = std::minmax_element(out.votes.begin(), out.votes.end());
  if (*hi - *lo > 1) return out;
  std::map<int, int> tally;
  for (int v : out.votes) ++tally[v];
  int best = 0, best_count = 0;
  bool tie = false;
  for (auto [v, n] : tally) {
    if (n > best_count) {
      best = v;
      best_count = n;
      tie = false;
    } else if (n == best_count) {
      tie = true;
    }
  }
  if (!tie) out.value = best;
  return out;
}

CheckReport smoothness_probe(std::span<const MultiPoly<Gf>> system, std::size_t num_vars, int expected_codim,
                             const GaloisField& field, std::uint64_t budget, std::uint64_t seed,
                             const EngineOptions& options) {
  if (budget < 1) throw InputError("sample budget must be at least 1");
  const auto lifted = lift(system, field);
  const auto pts = enumerate_solutions(lifted, num_vars, field, options);
  CheckReport report;
  report.seed = seed;
  report.list_solutions(pts);
  if (pts.empty()) {
    report.verdict = Verdict::inconclusive;
    report.message = "no solutions over " + field.spec().name();
    return report;
  }
  std::vector<std::size_t> chosen(pts.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (pts.size() > budget) {
    Rng rng(seed);
    for (std::size_t i = 0; i < budget; ++i) std::swap(chosen[i], chosen[i + rng.below(chosen.size() - i)]);
    chosen.resize(budget);
    std::sort(chosen.begin(), chosen.end());
  }
  int max_rank = 0;
  report.verdict = Verdict::pass;
  for (std::size_t i : chosen) {
    ++report.points_examined;
    const int r = static_cast<int>(jacobian_rank_at(lifted, pts[i]));
    max_rank = std::max(max_rank, r);
    if (r != expected_codim && report.verdict == Verdict::pass) {
      report.verdict = Verdict::fail;
      report.witness = pts[i];
      report.message = "Jacobian rank " + std::to_string(r) + " differs from the expected codimension " +
                       std::to_string(expected_codim);
    }
  }
  report.codim_observed = max_rank;
  if (report.verdict == Verdict::pass)
    report.message = "rank " + std::to_string(expected_codim) + " at " + std::to_string(report.points_examined) +
                     " points";
  return report;
}

std::vector<Point> oracle_a1_lines(const CIPair<Gf>& pair_in, const Point& x_in, const GaloisField& field,
                                   const EngineOptions& options) {
  const CIPair<Gf> pair = lift_pair(pair_in, field);
  const Point x = lift_point(x_in, field);
  detail::require_interior_point(pair, std::span<const Gf>(x));
  const auto boundary = pair.boundary_system();
  const auto ds = enumerate_solutions(boundary, pair.num_vars(), field, options);
  const auto k = static_cast<std::size_t>(pair.type.k);
  std::vector<Point> out;
  std::vector<UPoly> line(x.size());
  for (const auto& r : ds) {
    for (std::size_t i = 0; i < x.size(); ++i) line[i] = line_poly(x[i], r[i]);
    bool contained = true;
    for (const auto& f : pair.F) {
      if (udegree(substitute(f, line, field)) >= 0) {
        contained = false;
        break;
      }
    }
    if (!contained) continue;
    UPoly g = substitute(pair.G, line, field);
    g.resize(std::max(g.size(), k + 1), field.zero());
    bool contact = !g[k].is_zero();
    for (std::size_t j = 0; j < k && contact; ++j) contact = g[j].is_zero();
    if (contact) out.push_back(r);
  }
  return out;
}

ConicOracleResult oracle_a1_conics(const CIPair<Gf>& pair_in, const Point& p_in, const Point& q_in,
                                   const GaloisField& field, const EngineOptions& options) {
  if (pair_in.type.k != 1) throw UnsupportedError("the conic oracle needs a pair of type (d_1, ..., d_c; 1)");
  if (field.p() == 2) throw UnsupportedError("conic discriminants need characteristic other than 2");
  const CIPair<Gf> pair = lift_pair(pair_in, field);
  const Point p = lift_point(p_in, field), q = lift_point(q_in, field);
  if (p.size() != pair.num_vars() || q.size() != pair.num_vars()) throw InputError("point dimension does not match");
  if (detail::same_projective_point(std::span<const Gf>(p), std::span<const Gf>(q)))
    throw InputError("p and q must be distinct points");
  detail::require_interior_point(pair, std::span<const Gf>(p));
  detail::require_interior_point(pair, std::span<const Gf>(q));

  const std::size_t nv = pair.num_vars();
  const int n = pair.type.n;
  // Complete {p, q} to a basis with standard vectors; the extra ones span the planes' third direction.
  std::vector<Point> comp;
  {
    Matrix<Gf> m(2, static_cast<Eigen::Index>(nv));
    for (std::size_t i = 0; i < nv; ++i) {
      m(0, static_cast<Eigen::Index>(i)) = p[i];
      m(1, static_cast<Eigen::Index>(i)) = q[i];
    }
    for (std::size_t j = 0; j < nv && comp.size() + 2 < nv; ++j) {
      Matrix<Gf> trial(m.rows() + 1, m.cols());
      trial.topRows(m.rows()) = m;
      trial.row(m.rows()).setConstant(field.zero());
      trial(m.rows(), static_cast<Eigen::Index>(j)) = field.one();
      if (rank(trial) == trial.rows()) {
        m = trial;
        Point e(nv, field.zero());
        e[j] = field.one();
        comp.push_back(std::move(e));
      }
    }
  }
  ConicOracleResult out;
  out.planes = projective_size(field.q(), n - 2);
  const unsigned __int128 work = static_cast<unsigned __int128>(out.planes) * field.q() * field.q();
  if (work > options.cap)
    throw TooLargeError("conic search over " + std::to_string(out.planes) + " planes of " + field.spec().name() +
                        " exceeds the enumeration cap");

  const Gf one = field.one(), zero = field.zero();
  std::vector<UPoly> coords(nv), quick(nv);
  Point probe(nv, zero);
  for (u64 idx = 0; idx < out.planes; ++idx) {
    const Point c = projective_point_at(idx, n - 2, field);
    Point s(nv, zero);
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (std::size_t i = 0; i < nv; ++i) s[i] += c[j] * comp[j][i];
    // F_i(s + t p): the point phi(1, 0) = a2 s - a1 p must lie on X.
    for (std::size_t i = 0; i < nv; ++i) quick[i] = UPoly{s[i], p[i]};
    std::vector<UPoly> tangent;
    for (const auto& f : pair.F) tangent.push_back(substitute(f, quick, field));
    for (u64 r2 = 0; r2 < field.q(); ++r2) {
      const Gf a2 = field.element(r2);
      for (u64 r1 = 0; r1 < field.q(); ++r1) {
        const Gf a1 = field.element(r1);
        if (!a2.is_zero()) {
          const Gf t = -a1 / a2;
          bool on = true;
          for (const auto& u : tangent) on = on && uevaluate(u, t).is_zero();
          if (!on) continue;
        } else if (a1.is_zero()) {
          continue;
        }
        for (u64 r3 = 0; r3 < field.q(); ++r3) {
          const Gf a3 = field.element(r3);
          if (conic_reducibility(ConicCoefficients<Gf>{a1, a2, a3, one}) != ConicVerdict::irreducible) continue;
          // phi(u, 1) = (a2 u^2 + u) s + (-a1 u^2 - a3 u) p + (a2 u + 1) q
          const Gf b = a2 + one;
          for (std::size_t i = 0; i < nv; ++i) probe[i] = b * s[i] - (a1 + a3) * p[i] + b * q[i];
          bool on_probe = true;
          for (const auto& f : pair.F) on_probe = on_probe && evaluate(f, probe).is_zero();
          if (!on_probe) continue;
          for (std::size_t i = 0; i < nv; ++i)
            coords[i] = UPoly{q[i], s[i] - a3 * p[i] + a2 * q[i], a2 * s[i] - a1 * p[i]};
          bool inside = true;
          for (const auto& f : pair.F) {
            if (udegree(substitute(f, coords, field)) >= 0) {
              inside = false;
              break;
            }
          }
          if (!inside) continue;
          UPoly g = substitute(pair.G, coords, field);
          g.resize(3, zero);
          if (udegree(g) < 0) continue;
          if ((g[1] * g[1] - field.from_int(4) * g[0] * g[2]).is_zero()) ++out.smooth_conic_count;
        }
      }
    }
  }
  const auto lp = oracle_a1_lines(pair, p, field, options);
  const auto lq = oracle_a1_lines(pair, q, field, options);
  std::set_intersection(lp.begin(), lp.end(), lq.begin(), lq.end(), std::back_inserter(out.node_points), point_less);
  return out;
}

GeneralPoint general_point(const CIPair<Gf>& pair, const GaloisField& field, Rng& rng, const PointFilter& filter,
                           const EngineOptions& options) {
  GeneralPoint out;
  for (const GaloisField* fld : field_ladder(pair, field)) {
    const auto F = lift(std::span<const MultiPoly<Gf>>(pair.F), *fld);
    for (int a = 0; a < kGeneralPointRetries; ++a) {
      ++out.attempts;
      auto x = draw_interior(pair, F, *fld, rng, options);
      if (!x || (filter && !filter(*x, *fld))) continue;
      out.point = std::move(*x);
      out.field = fld;
      return out;
    }
  }
  throw GenerationError("no general point found after " + std::to_string(out.attempts) + " attempts");
}

GeneralPointPair general_point_pair(const CIPair<Gf>& pair, const GaloisField& field, Rng& rng,
                                    const std::function<bool(const Point&, const Point&, const GaloisField&)>& filter,
                                    const EngineOptions& options) {
  GeneralPointPair out;
  for (const GaloisField* fld : field_ladder(pair, field)) {
    const auto F = lift(std::span<const MultiPoly<Gf>>(pair.F), *fld);
    for (int a = 0; a < kGeneralPointRetries; ++a) {
      ++out.attempts;
      auto p = draw_interior(pair, F, *fld, rng, options);
      if (!p) continue;
      auto q = draw_interior(pair, F, *fld, rng, options);
      if (!q || same_point(*p, *q)) continue;
      if (line_lies_in(F, std::span<const Gf>(*p), std::span<const Gf>(*q))) continue;
      if (filter && !filter(*p, *q, *fld)) continue;
      out.p = std::move(*p);
      out.q = std::move(*q);
      out.field = fld;
      return out;
    }
  }
  throw GenerationError("no general pair of points found after " + std::to_string(out.attempts) + " attempts");
}

}  // namespace a1lab
