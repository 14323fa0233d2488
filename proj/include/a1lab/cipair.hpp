#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "a1lab/enumerate.hpp"
#include "a1lab/errors.hpp"
#include "a1lab/field.hpp"
#include "a1lab/multipoly.hpp"
#include "a1lab/report.hpp"
#include "a1lab/rng.hpp"

namespace a1lab {

/// Type (d_1, ..., d_c; k) of a complete intersection pair in P^n.
struct PairType {
  int n = 0;
  std::vector<int> degrees;
  int k = 1;

  int codim() const { return static_cast<int>(degrees.size()); }
  /// d = d_1 + ... + d_c + k
  int d() const { return std::accumulate(degrees.begin(), degrees.end(), 0) + k; }
  int sum_of_squares() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0, [](int s, int x) { return s + x * x; });
  }
  std::string to_string() const;

  friend bool operator==(const PairType&, const PairType&) = default;
};

/// Throws InputError unless c >= 1, n >= 2, c + 1 <= n, k >= 1 and every d_i >= 2
/// (d_i >= 1 when `allow_linear`, which only the universal cover of a k = 1 pair needs).
void check_type(const PairType& type, bool allow_linear = false);

/// A smooth complete intersection pair candidate: X = {F_1 = ... = F_c = 0} in P^n
/// and the boundary D = X ∩ {G = 0}.
template <class S>
struct CIPair {
  PairType type;
  std::vector<MultiPoly<S>> F;
  MultiPoly<S> G;
  FieldSpec field;

  std::size_t num_vars() const { return static_cast<std::size_t>(type.n) + 1; }
  /// F_1, ..., F_c followed by G.
  std::vector<MultiPoly<S>> boundary_system() const {
    auto out = F;
    out.push_back(G);
    return out;
  }
};

/// Validated constructor: degrees, homogeneity and variable counts must match the type.
template <class S>
CIPair<S> make_pair(PairType type, std::vector<MultiPoly<S>> F, MultiPoly<S> G, FieldSpec field,
                    bool allow_linear = false) {
  check_type(type, allow_linear);
  const std::size_t nv = static_cast<std::size_t>(type.n) + 1;
  if (F.size() != type.degrees.size())
    throw InputError("expected " + std::to_string(type.degrees.size()) + " interior equations, got " +
                     std::to_string(F.size()));
  auto check = [nv](const MultiPoly<S>& f, int deg, const std::string& what) {
    if (f.num_vars() != nv) throw InputError(what + " must have " + std::to_string(nv) + " variables");
    if (f.is_zero()) throw InputError(what + " is zero");
    if (!f.is_homogeneous()) throw InputError(what + " is not homogeneous");
    if (f.degree() != deg)
      throw InputError(what + " has degree " + std::to_string(f.degree()) + ", declared " + std::to_string(deg));
  };
  for (std::size_t i = 0; i < F.size(); ++i) check(F[i], type.degrees[i], "F_" + std::to_string(i + 1));
  check(G, type.k, "G");
  return CIPair<S>{std::move(type), std::move(F), std::move(G), std::move(field)};
}

struct CriteriaReport {
  int d = 0;
  int sum_of_squares = 0;
  bool log_fano = false;                  // d <= n
  bool a1_simply_connected_bound = false;  // k = 1 and sum d_i^2 <= n
  bool cover_bound = false;                // sum d_i^2 + k^2 <= n + 1
  bool affine_space = false;               // c = 0; never true for a pair
};

CriteriaReport criteria(const PairType& type);

/// Type (d_1, ..., d_c, k; 1) in P^{n+1} of the degree-k cyclic cover branched along D.
PairType cover_type(const PairType& type);

/// {F_1 = ... = F_c = y^k - G = 0} in P^{n+1} with boundary {y = 0}; y is the last variable.
template <class S>
CIPair<S> universal_cover(const CIPair<S>& pair) {
  const std::uint64_t ch = pair.field.characteristic();
  if (ch != 0 && static_cast<std::uint64_t>(pair.type.k) % ch == 0)
    throw ConstructionError("characteristic " + std::to_string(ch) + " divides the boundary degree k = " +
                            std::to_string(pair.type.k));
  const std::size_t nv = pair.num_vars() + 1;
  const S one = like(pair.G.leading_coefficient(), 1);
  std::vector<MultiPoly<S>> F;
  for (const auto& f : pair.F) F.push_back(extend_variables(f, nv));
  Exponents yk(nv, 0);
  yk.back() = static_cast<std::uint16_t>(pair.type.k);
  F.push_back(MultiPoly<S>::monomial(nv, yk, one) - extend_variables(pair.G, nv));
  return make_pair(cover_type(pair.type), std::move(F), MultiPoly<S>::variable(nv, nv - 1, one), pair.field, true);
}

/// Coefficients reduced into `field` (its prime subfield receives the residues).
CIPair<Gf> reduce_mod(const CIPair<Rational>& pair, const GaloisField& field);
Gf reduce_rational(const Rational& x, const GaloisField& field);

/// The same pair with coefficients moved into `field`.
CIPair<Gf> lift_pair(const CIPair<Gf>& pair, const GaloisField& field);

const GaloisField& field_of(const CIPair<Gf>& pair);

/// Full enumeration when |P^n(F_q)| <= this bound, seeded sampling above it.
inline constexpr std::uint64_t kFullValidationBound = 1'000'000;

/// Jacobian smoothness check of X and D over `field`: rank J(F) = c on X and
/// rank J(F, G) = c + 1 on D. Points of X are the listed solutions.
CheckReport validate_pair(const CIPair<Gf>& pair, const GaloisField& field, std::uint64_t budget,
                          std::uint64_t seed = kDefaultSeed, const EngineOptions& options = {});
CheckReport validate_pair(const CIPair<Rational>& pair, const GaloisField& field, std::uint64_t budget,
                          std::uint64_t seed = kDefaultSeed, const EngineOptions& options = {});

inline constexpr int kRandomPairRetries = 32;
inline constexpr std::uint64_t kRandomPairBudget = 256;

/// Dense random coefficients from `seed`, retried until validate_pair passes.
CIPair<Gf> random_pair(const PairType& type, const GaloisField& field, std::uint64_t seed,
                       const EngineOptions& options = {});

/// True when the line through p and q lies in X, read off the line expansion
/// of each F_i at p evaluated in direction q.
bool line_in_interior(const CIPair<Gf>& pair, const Point& p, const Point& q);

struct LineProbeResult {
  int trials = 0;
  int contained = 0;
  std::vector<std::pair<Point, Point>> violations;
};

/// Random pairs of points of X(F_q) whose joining line is tested for containment in X.
LineProbeResult probe_lines_through_pairs(const CIPair<Gf>& pair, const GaloisField& field, int trials, Rng& rng,
                                          const EngineOptions& options = {});

}  // namespace a1lab
