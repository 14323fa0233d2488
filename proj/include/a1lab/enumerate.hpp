#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a1lab/field.hpp"
#include "a1lab/linalg.hpp"
#include "a1lab/multipoly.hpp"
#include "a1lab/rng.hpp"

namespace a1lab {

/// Projective point stored as a coordinate vector (canonical when the first
/// nonzero coordinate is one).
using Point = std::vector<Gf>;

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

struct EngineOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t cap = kEnumerationCap;
};

/// |P^m(F_q)|, saturating at UINT64_MAX.
std::uint64_t projective_size(std::uint64_t q, int m);

/// Canonical representative: first nonzero coordinate scaled to one.
Point normalize_point(Point p);
bool point_less(const Point& a, const Point& b);
bool same_point(const Point& a, const Point& b);

/// Coefficients moved into `field` (from the field itself or its prime subfield).
MultiPoly<Gf> lift(const MultiPoly<Gf>& f, const GaloisField& field);
std::vector<MultiPoly<Gf>> lift(std::span<const MultiPoly<Gf>> fs, const GaloisField& field);
Point lift_point(const Point& x, const GaloisField& field);

/// The index-th canonical point of P^m(F_q) in enumeration order.
Point projective_point_at(std::uint64_t index, int m, const GaloisField& field);

/// Every common zero in P^{num_vars-1}(F_q) of a homogeneous system, sorted.
///
/// Linear equations are solved first and the search runs in their solution
/// subspace; the remaining equations are fibred over the last coordinate and
/// solved by univariate root finding. The cap applies to the number of fibres
/// (or to the point count when no nonlinear equation is left).
std::vector<Point> enumerate_solutions(std::span<const MultiPoly<Gf>> system, std::size_t num_vars,
                                       const GaloisField& field, const EngineOptions& options = {});

inline std::vector<Point> enumerate_solutions(const std::vector<MultiPoly<Gf>>& system, std::size_t num_vars,
                                              const GaloisField& field, const EngineOptions& options = {}) {
  return enumerate_solutions(std::span<const MultiPoly<Gf>>(system), num_vars, field, options);
}

/// Seeded random solutions: intersections with random linear subspaces of
/// projective dimension `slice_dim` (the codimension of the solution set).
/// Returns up to `want` distinct points, sorted.
std::vector<Point> sample_solutions(std::span<const MultiPoly<Gf>> system, std::size_t num_vars, int slice_dim,
                                    const GaloisField& field, Rng& rng, std::size_t want,
                                    const EngineOptions& options = {});

/// Random nonzero vector of length n with uniform coordinates.
Point random_vector(std::size_t n, const GaloisField& field, Rng& rng);

bool vanishes_at(std::span<const MultiPoly<Gf>> system, const Point& x);

unsigned resolve_threads(unsigned requested);

}  // namespace a1lab
