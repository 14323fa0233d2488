#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "a1lab/cipair.hpp"
#include "a1lab/enumerate.hpp"
#include "a1lab/moduli.hpp"
#include "a1lab/report.hpp"
#include "a1lab/rng.hpp"

namespace a1lab {

/// Random hyperplanes drawn per slicing stage.
inline constexpr int kSliceCandidates = 12;

struct DimensionEstimate {
  std::optional<int> value;  // null when the votes spread by more than one or tie
  std::vector<int> votes;
};

/// Dimension of the solution set by repeated hyperplane slicing of its F_q-points.
/// Each trial draws kSliceCandidates seeded random hyperplanes per stage; the
/// stage counts as a cut when at least a third of them leave a nonempty set, and
/// the trial continues in the first such slice. A positive-dimensional set survives
/// a random hyperplane with probability about 1/2 or more, m points about m/q.
/// The vote is the number of cuts (-1 for an empty set); the estimate is the most
/// frequent vote.
DimensionEstimate dimension_by_slicing(std::span<const MultiPoly<Gf>> system, std::size_t num_vars,
                                       const GaloisField& field, int trials, Rng& rng,
                                       const EngineOptions& options = {});

/// Jacobian rank at every solution (or at `budget` seeded samples of them) must
/// equal `expected_codim`. codim_observed is the largest rank seen.
CheckReport smoothness_probe(std::span<const MultiPoly<Gf>> system, std::size_t num_vars, int expected_codim,
                             const GaloisField& field, std::uint64_t budget, std::uint64_t seed = kDefaultSeed,
                             const EngineOptions& options = {});

/// Boundary points r in D(F_q) of the A^1-lines through x: the line t*x + r lies
/// in X and G(t*x + r) = G(x) t^k. Sorted canonically.
std::vector<Point> oracle_a1_lines(const CIPair<Gf>& pair, const Point& x, const GaloisField& field,
                                   const EngineOptions& options = {});

struct ConicOracleResult {
  std::uint64_t smooth_conic_count = 0;
  std::vector<Point> node_points;
  std::uint64_t planes = 0;
};

/// Plane conics through p and q not containing the line pq, lying in X,
/// irreducible and tangent to D at a single point; and the nodes r on D for
/// which both lines pr and qr are A^1-lines.
ConicOracleResult oracle_a1_conics(const CIPair<Gf>& pair, const Point& p, const Point& q, const GaloisField& field,
                                   const EngineOptions& options = {});

inline constexpr int kGeneralPointRetries = 64;

/// Extra open condition imposed on a drawn point (evaluated over `field`).
using PointFilter = std::function<bool(const Point&, const GaloisField&)>;

struct GeneralPoint {
  Point point;
  const GaloisField* field = nullptr;
  int attempts = 0;
};

struct GeneralPointPair {
  Point p, q;
  const GaloisField* field = nullptr;
  int attempts = 0;
};

/// Seeded random x in X°(F_q) at which X is smooth and `filter` holds. After
/// kGeneralPointRetries failures the search moves to F_{p^r'} for r < r' <= 4
/// when the pair is defined over F_p; GenerationError when everything fails.
GeneralPoint general_point(const CIPair<Gf>& pair, const GaloisField& field, Rng& rng, const PointFilter& filter = {},
                           const EngineOptions& options = {});

/// Two distinct general points whose joining line is not contained in X.
GeneralPointPair general_point_pair(const CIPair<Gf>& pair, const GaloisField& field, Rng& rng,
                                    const std::function<bool(const Point&, const Point&, const GaloisField&)>& filter = {},
                                    const EngineOptions& options = {});

}  // namespace a1lab
