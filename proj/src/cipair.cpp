#include "a1lab/cipair.hpp"

#include <sstream>

#include "a1lab/linalg.hpp"

namespace a1lab {

std::string PairType::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
  os << ';' << k << ") in P^" << n;
  return os.str();
}

void check_type(const PairType& type, bool allow_linear) {
  const int c = type.codim();
  if (c < 1) throw InputError("a pair needs at least one interior equation");
  if (type.n < 2) throw InputError("ambient dimension must be at least 2");
  if (c + 1 > type.n)
    throw InputError("codimension c = " + std::to_string(c) + " needs c + 1 <= n, got n = " + std::to_string(type.n));
  if (type.k < 1) throw InputError("boundary degree must be at least 1");
  for (int d : type.degrees)
    if (d < (allow_linear ? 1 : 2)) throw InputError("interior degrees must be at least 2, got " + std::to_string(d));
}

CriteriaReport criteria(const PairType& type) {
  CriteriaReport r;
  r.d = type.d();
  r.sum_of_squares = type.sum_of_squares();
  r.log_fano = r.d <= type.n;
  r.a1_simply_connected_bound = type.k == 1 && r.sum_of_squares <= type.n;
  r.cover_bound = r.sum_of_squares + type.k * type.k <= type.n + 1;
  r.affine_space = type.codim() == 0;
  return r;
}

PairType cover_type(const PairType& type) {
  PairType out = type;
  out.n = type.n + 1;
  out.degrees.push_back(type.k);
  out.k = 1;
  return out;
}

Gf reduce_rational(const Rational& x, const GaloisField& field) {
  const unsigned long p = field.p();
  const unsigned long den = mpz_fdiv_ui(x.get_den_mpz_t(), p);
  if (den == 0) throw ReductionError("denominator of " + x.get_str() + " is divisible by " + std::to_string(p));
  const unsigned long num = mpz_fdiv_ui(x.get_num_mpz_t(), p);
  const GaloisField& fp = field.prime_field();
  const Gf v = fp.from_int(static_cast<long long>(num)) / fp.from_int(static_cast<long long>(den));
  return field.embed(v);
}

CIPair<Gf> reduce_mod(const CIPair<Rational>& pair, const GaloisField& field) {
  auto red = [&](const MultiPoly<Rational>& f) {
    return map_coefficients<Gf>(f, [&](const Rational& c) { return reduce_rational(c, field); });
  };
  std::vector<MultiPoly<Gf>> F;
  for (const auto& f : pair.F) F.push_back(red(f));
  try {
    return make_pair(pair.type, std::move(F), red(pair.G), field.spec(), pair.type.degrees.end() !=
                     std::find(pair.type.degrees.begin(), pair.type.degrees.end(), 1));
  } catch (const InputError& e) {
    throw ReductionError(std::string("reduction mod ") + std::to_string(field.p()) + " changes the type: " + e.what());
  }
}

CIPair<Gf> lift_pair(const CIPair<Gf>& pair, const GaloisField& field) {
  CIPair<Gf> out = pair;
  for (auto& f : out.F) f = lift(f, field);
  out.G = lift(pair.G, field);
  out.field = field.spec();
  return out;
}

const GaloisField& field_of(const CIPair<Gf>& pair) { return GaloisField::get(pair.field); }

namespace {

std::string point_string(const Point& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ":" : "") + x[i].to_string();
  return s + "]";
}

}  // namespace

CheckReport validate_pair(const CIPair<Gf>& pair, const GaloisField& field, std::uint64_t budget, std::uint64_t seed,
                          const EngineOptions& options) {
  if (budget < 1) throw InputError("sample budget must be at least 1");
  const auto nv = pair.num_vars();
  const int c = pair.type.codim();
  const auto F = lift(std::span<const MultiPoly<Gf>>(pair.F), field);
  const auto FGs = pair.boundary_system();
  const auto FG = lift(std::span<const MultiPoly<Gf>>(FGs), field);

  CheckReport report;
  report.seed = seed;
  std::vector<Point> xs, ds;
  if (projective_size(field.q(), pair.type.n) <= kFullValidationBound) {
    xs = enumerate_solutions(F, nv, field, options);
    ds = enumerate_solutions(FG, nv, field, options);
  } else {
    const Rng master(seed);
    Rng rx = master.split(0), rd = master.split(1);
    xs = sample_solutions(F, nv, c, field, rx, budget, options);
    ds = sample_solutions(FG, nv, c + 1, field, rd, budget, options);
  }
  report.list_solutions(xs);
  if (xs.empty()) {
    report.verdict = Verdict::inconclusive;
    report.message = "X has no points over " + field.spec().name();
    return report;
  }
  int max_rank = 0;
  for (const auto& x : xs) {
    ++report.points_examined;
    const int r = static_cast<int>(jacobian_rank_at(F, x));
    max_rank = std::max(max_rank, r);
    if (r != c) {
      report.verdict = Verdict::fail;
      report.witness = x;
      report.codim_observed = max_rank;
      report.message = "X is singular at " + point_string(x) + ": Jacobian rank " + std::to_string(r) + " < " +
                       std::to_string(c);
      return report;
    }
  }
  report.codim_observed = max_rank;
  for (const auto& x : ds) {
    ++report.points_examined;
    const int r = static_cast<int>(jacobian_rank_at(FG, x));
    if (r != c + 1) {
      report.verdict = Verdict::fail;
      report.witness = x;
      report.message = "D is singular at " + point_string(x) + ": Jacobian rank " + std::to_string(r) + " < " +
                       std::to_string(c + 1);
      return report;
    }
  }
  report.verdict = Verdict::pass;
  report.message = std::to_string(xs.size()) + " points of X and " + std::to_string(ds.size()) +
                   " points of D checked";
  return report;
}

CheckReport validate_pair(const CIPair<Rational>& pair, const GaloisField& field, std::uint64_t budget,
                          std::uint64_t seed, const EngineOptions& options) {
  return validate_pair(reduce_mod(pair, field), field, budget, seed, options);
}

CIPair<Gf> random_pair(const PairType& type, const GaloisField& field, std::uint64_t seed,
                       const EngineOptions& options) {
  check_type(type);
  const std::size_t nv = static_cast<std::size_t>(type.n) + 1;
  const Rng master(seed);
  std::string last = "no attempt produced a nonzero system";
  for (int attempt = 0; attempt < kRandomPairRetries; ++attempt) {
    Rng rng = master.split(static_cast<std::uint64_t>(attempt));
    auto draw = [&](int deg) {
      std::vector<MultiPoly<Gf>::Term> terms;
      for (auto& e : monomials_of_degree(nv, deg)) terms.push_back({e, field.element(rng.below(field.q()))});
      return MultiPoly<Gf>::from_terms(nv, std::move(terms));
    };
    std::vector<MultiPoly<Gf>> F;
    for (int d : type.degrees) F.push_back(draw(d));
    MultiPoly<Gf> G = draw(type.k);
    bool degenerate = G.is_zero();
    for (const auto& f : F) degenerate = degenerate || f.is_zero();
    if (degenerate) continue;
    auto pair = make_pair(type, std::move(F), std::move(G), field.spec());
    const auto report = validate_pair(pair, field, kRandomPairBudget, rng.next(), options);
    if (report.verdict == Verdict::pass) return pair;
    last = report.message;
  }
  throw GenerationError("no smooth pair of type " + type.to_string() + " over " + field.spec().name() + " after " +
                        std::to_string(kRandomPairRetries) + " attempts; last: " + last);
}

bool line_in_interior(const CIPair<Gf>& pair, const Point& p, const Point& q) {
  if (p.empty() || !p[0].field()) throw InputError("points must carry a field");
  const GaloisField& field = *p[0].field();
  const auto a = frame_at(std::span<const Gf>(p));
  const auto a_inv = inverse_matrix(a, field.one());
  if (!a_inv) throw ConsistencyError("frame at a point is not invertible");
  const Vector<Gf> r = mat_vec(*a_inv, std::span<const Gf>(q));
  const Point rp(r.data(), r.data() + r.size());
  for (const auto& f : pair.F) {
    const auto ex = restrict_to_line(compose_linear(lift(f, field), a));
    for (const auto& pj : ex.coefficients)
      if (!pj.is_zero() && !evaluate(pj, rp).is_zero()) return false;
  }
  return true;
}

LineProbeResult probe_lines_through_pairs(const CIPair<Gf>& pair, const GaloisField& field, int trials, Rng& rng,
                                          const EngineOptions& options) {
  LineProbeResult out;
  const auto F = lift(std::span<const MultiPoly<Gf>>(pair.F), field);
  const auto pool = sample_solutions(F, pair.num_vars(), pair.type.codim(), field, rng,
                                     std::max<std::size_t>(2 * static_cast<std::size_t>(trials), 16), options);
  if (pool.size() < 2) return out;
  for (int t = 0; t < trials; ++t) {
    const std::size_t i = rng.below(pool.size());
    std::size_t j = rng.below(pool.size() - 1);
    if (j >= i) ++j;
    ++out.trials;
    if (line_in_interior(pair, pool[i], pool[j])) {
      ++out.contained;
      out.violations.emplace_back(pool[i], pool[j]);
    }
  }
  return out;
}

}  // namespace a1lab
