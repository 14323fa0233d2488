#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a1lab/cipair.hpp"
#include "a1lab/errors.hpp"
#include "a1lab/linalg.hpp"
#include "a1lab/multipoly.hpp"

namespace a1lab {

/// An equation dropped from a union of systems because it is proportional to a kept one.
struct RedundancyEntry {
  std::size_t kept = 0;  // index into the presentation's equations
  char side = 'q';       // which line system the dropped equation came from
  std::size_t index = 0; // its index inside that line system
  std::string reason;
};

/// Equation system in P^ambient_dim with its declared complete-intersection type.
template <class S>
struct ModuliPresentation {
  int ambient_dim = 0;
  std::vector<MultiPoly<S>> equations;
  std::vector<int> declared_type;
  std::vector<std::string> labels;
  int expected_dim = 0;
  std::vector<RedundancyEntry> redundancy_log;

  std::size_t num_vars() const { return static_cast<std::size_t>(ambient_dim) + 1; }
  bool generically_empty() const { return expected_dim < 0; }
  long long degree_product() const {
    long long p = 1;
    for (int d : declared_type) p *= d;
    return p;
  }
};

/// n - d: expected dimension of the space of A^1-lines through a general interior point.
inline int expected_dimension_lines(const PairType& type) { return type.n - type.d(); }

struct LineModuliOptions {
  /// Report the equations in the original coordinates (true) or in the frame
  /// where the base point is [1:0:...:0].
  bool original_coordinates = true;
};

namespace detail {

inline CIPair<Gf> adapt_pair(const CIPair<Gf>& pair, std::span<const Gf> x) {
  if (x.empty() || !x[0].field()) throw InputError("point coordinates must carry a field");
  if (x[0].field()->spec() == pair.field) return pair;
  return lift_pair(pair, *x[0].field());
}
inline const CIPair<Rational>& adapt_pair(const CIPair<Rational>& pair, std::span<const Rational>) { return pair; }

template <class S>
std::string point_text(std::span<const S> x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ":" : "") + to_string(x[i]);
  return s + "]";
}

template <class S>
void require_interior_point(const CIPair<S>& pair, std::span<const S> x) {
  if (x.size() != pair.num_vars())
    throw InputError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                     std::to_string(pair.num_vars()));
  if (std::all_of(x.begin(), x.end(), [](const S& c) { return is_zero(c); }))
    throw InputError("the zero vector is not a projective point");
  for (std::size_t i = 0; i < pair.F.size(); ++i)
    if (!is_zero(evaluate(pair.F[i], x)))
      throw PreconditionError("point " + point_text(x) + " is not on X: F_" + std::to_string(i + 1) + " does not vanish");
  if (is_zero(evaluate(pair.G, x))) throw PreconditionError("point " + point_text(x) + " lies on the boundary D");
}

template <class S>
bool same_projective_point(std::span<const S> a, std::span<const S> b) {
  Matrix<S> m(static_cast<Eigen::Index>(a.size()), 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = a[i];
    m(static_cast<Eigen::Index>(i), 1) = b[i];
  }
  return rank(m) < 2;
}

}  // namespace detail

/// Equations of the A^1-lines through x: the line t*x + r lies in X and meets
/// D only at r, to order k. With F_i(t*x + r) = sum_j P_ij(r) t^(d_i - j) and
/// G(t*x + r) = sum_j Q_j(r) t^(k - j), the system is P_ij = 0 (1 <= j <= d_i)
/// and Q_j = 0 (1 <= j <= k), of type (1..d_1, ..., 1..d_c, 1..k).
template <class S>
ModuliPresentation<S> line_moduli_in_frame(const CIPair<S>& pair_in, const Matrix<S>& frame,
                                           const LineModuliOptions& options = {}) {
  const std::size_t nv = pair_in.num_vars();
  if (static_cast<std::size_t>(frame.rows()) != nv || frame.cols() != frame.rows())
    throw InputError("frame must be a square matrix of the ambient size");
  std::vector<S> x(nv);
  for (std::size_t i = 0; i < nv; ++i) x[i] = frame(static_cast<Eigen::Index>(i), 0);
  const auto& pair = detail::adapt_pair(pair_in, std::span<const S>(x));
  detail::require_interior_point(pair, std::span<const S>(x));
  const S one = like(x[0], 1);
  const auto a_inv = inverse_matrix(frame, one);
  if (!a_inv) throw InputError("frame is not invertible");

  ModuliPresentation<S> out;
  out.ambient_dim = pair.type.n;
  out.expected_dim = expected_dimension_lines(pair.type);
  auto push = [&](MultiPoly<S> eq, int deg, std::string label) {
    if (options.original_coordinates) eq = compose_linear(eq, *a_inv);
    out.equations.push_back(std::move(eq));
    out.declared_type.push_back(deg);
    out.labels.push_back(std::move(label));
  };
  for (std::size_t i = 0; i < pair.F.size(); ++i) {
    const auto fi = compose_linear(pair.F[i], frame);
    const auto ex = restrict_to_line(fi);
    if (!ex.coefficients[0].is_zero())
      throw ConsistencyError("P_" + std::to_string(i + 1) + "_0 = F_" + std::to_string(i + 1) + "(x) is not zero");
    for (int j = 1; j <= ex.base_degree; ++j)
      push(ex.coefficients[static_cast<std::size_t>(j)], j, "P_" + std::to_string(i + 1) + "_" + std::to_string(j));
  }
  const auto g = compose_linear(pair.G, frame);
  const auto ex = restrict_to_line(g);
  const S gx = evaluate(pair.G, std::span<const S>(x));
  if (ex.coefficients[0] != MultiPoly<S>::constant(nv, gx) || is_zero(gx))
    throw ConsistencyError("Q_0 differs from G(x)");
  if (ex.coefficients.back() != g) throw ConsistencyError("Q_k differs from the transformed G");
  for (int j = 1; j <= ex.base_degree; ++j)
    push(ex.coefficients[static_cast<std::size_t>(j)], j, "Q_" + std::to_string(j));
  if (options.original_coordinates && out.equations.back() != pair.G)
    throw ConsistencyError("Q_k differs from G in the original coordinates");
  return out;
}

/// Line moduli through x using the frame whose first column is x and whose other
/// columns are the standard vectors except the one at the first nonzero coordinate of x.
template <class S>
ModuliPresentation<S> line_moduli_through_point(const CIPair<S>& pair, std::span<const S> x,
                                                const LineModuliOptions& options = {}) {
  if (x.size() != pair.num_vars()) throw InputError("point dimension does not match the pair");
  return line_moduli_in_frame(pair, frame_at(x), options);
}

template <class S>
ModuliPresentation<S> line_moduli_through_point(const CIPair<S>& pair, const std::vector<S>& x,
                                                const LineModuliOptions& options = {}) {
  return line_moduli_through_point(pair, std::span<const S>(x), options);
}

/// Degrees (1,1,...,d_i-1,d_i-1,d_i for each i, then 1) of the node locus.
std::vector<int> delta_type(const PairType& type);

/// True when the line through p and q lies in X (all F_i vanish on s*p + u*q).
template <class S>
bool line_lies_in(const std::vector<MultiPoly<S>>& system, std::span<const S> p, std::span<const S> q) {
  Matrix<S> m(static_cast<Eigen::Index>(p.size()), 2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = p[i];
    m(static_cast<Eigen::Index>(i), 1) = q[i];
  }
  return std::all_of(system.begin(), system.end(), [&](const MultiPoly<S>& f) { return compose_linear(f, m).is_zero(); });
}

/// The node locus: the union of the line systems through p and through q, in the
/// node variable r, with the shared equations F_i and G kept once.
template <class S>
ModuliPresentation<S> conic_boundary_locus(const CIPair<S>& pair_in, std::span<const S> p, std::span<const S> q) {
  if (pair_in.type.k != 1) throw UnsupportedError("the node locus needs a pair of type (d_1, ..., d_c; 1)");
  if (p.size() != pair_in.num_vars() || q.size() != pair_in.num_vars())
    throw InputError("point dimension does not match the pair");
  if (detail::same_projective_point(p, q)) throw InputError("p and q must be distinct points");
  const auto& pair = detail::adapt_pair(pair_in, p);
  if (line_lies_in(pair.F, p, q)) throw InputError("the line through p and q lies in X");
  const auto lp = line_moduli_through_point(pair, p);
  const auto lq = line_moduli_through_point(pair, q);

  ModuliPresentation<S> out;
  out.ambient_dim = pair.type.n;
  std::vector<MultiPoly<S>> kept_normal;
  auto offer = [&](const ModuliPresentation<S>& side, char tag, std::size_t idx) {
    const auto norm = normalized(side.equations[idx]);
    for (std::size_t k = 0; k < kept_normal.size(); ++k) {
      if (kept_normal[k] == norm) {
        out.redundancy_log.push_back(
            {k, tag, idx, side.labels[idx] + " from " + std::string(1, tag) + " is proportional to " + out.labels[k]});
        return;
      }
    }
    kept_normal.push_back(norm);
    out.equations.push_back(side.equations[idx]);
    out.declared_type.push_back(side.declared_type[idx]);
    out.labels.push_back(std::string(1, tag) + ":" + side.labels[idx]);
  };
  std::size_t offset = 0;
  for (int d : pair.type.degrees) {
    for (int j = 0; j < d; ++j) {
      offer(lp, 'p', offset + static_cast<std::size_t>(j));
      offer(lq, 'q', offset + static_cast<std::size_t>(j));
    }
    offset += static_cast<std::size_t>(d);
  }
  offer(lp, 'p', offset);
  offer(lq, 'q', offset);

  const auto expected = delta_type(pair.type);
  if (out.declared_type != expected || out.redundancy_log.size() != pair.type.degrees.size() + 1)
    throw PreconditionError("p and q are not in general position: the two line systems share " +
                            std::to_string(out.redundancy_log.size()) + " equations up to scaling, expected " +
                            std::to_string(pair.type.degrees.size() + 1));
  out.expected_dim = out.ambient_dim - static_cast<int>(out.equations.size());
  return out;
}

template <class S>
ModuliPresentation<S> conic_boundary_locus(const CIPair<S>& pair, const std::vector<S>& p, const std::vector<S>& q) {
  return conic_boundary_locus(pair, std::span<const S>(p), std::span<const S>(q));
}

struct ConicFiberType {
  std::vector<int> type;
  int degree_sum = 0;
  bool rationally_connected_bound = false;  // degree_sum <= n
};

/// Type of the general two-point A^1-conic fiber: the node-locus type without its final 1.
ConicFiberType conic_fiber_type(const PairType& type);

struct DeltaMetadata {
  int delta_prime_degree = 2;
  int delta_degree = 1;
  int pullback_multiplicity = 2;
};

DeltaMetadata delta_degree_metadata(const PairType& type);

/// a1 x^2 + a2 x y + a3 x z + a4 y z, the plane conics through [0:1:0] and [0:0:1].
template <class S>
struct ConicCoefficients {
  S a1, a2, a3, a4;
};

enum class ConicVerdict { contains_line_pq, reducible, irreducible };

inline const char* to_string(ConicVerdict v) {
  switch (v) {
    case ConicVerdict::contains_line_pq:
      return "contains-line-pq";
    case ConicVerdict::reducible:
      return "reducible";
    case ConicVerdict::irreducible:
      return "irreducible";
  }
  return "?";
}

/// Symmetric matrix of the quadratic form in the variables (x, y, z).
template <class S>
Matrix<S> conic_gram(const ConicCoefficients<S>& c) {
  const S* nz = nullptr;
  for (const S* s : {&c.a1, &c.a2, &c.a3, &c.a4})
    if (!is_zero(*s)) nz = s;
  if (!nz) throw InputError("conic coefficients are all zero");
  if (characteristic(*nz) == 2) throw UnsupportedError("conic discriminants need characteristic other than 2");
  const S zero = like(*nz, 0), half = inverse(like(*nz, 2));
  Matrix<S> m(3, 3);
  m << c.a1, half * c.a2, half * c.a3, half * c.a2, zero, half * c.a4, half * c.a3, half * c.a4, zero;
  return m;
}

template <class S>
ConicVerdict conic_reducibility(const ConicCoefficients<S>& c) {
  const Matrix<S> gram = conic_gram(c);
  if (is_zero(c.a4)) return ConicVerdict::contains_line_pq;
  return rank(gram) <= 2 ? ConicVerdict::reducible : ConicVerdict::irreducible;
}

}  // namespace a1lab
