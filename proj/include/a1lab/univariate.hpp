#pragma once

#include <span>
#include <vector>

#include "a1lab/field.hpp"
#include "a1lab/multipoly.hpp"

namespace a1lab {

/// Dense univariate polynomial over a finite field, coefficients low to high.
/// Trailing zeros are allowed; `udegree` ignores them.
using UPoly = std::vector<Gf>;

int udegree(const UPoly& a);
void utrim(UPoly& a);
UPoly umul(const UPoly& a, const UPoly& b);
UPoly umod(UPoly a, const UPoly& m);
UPoly ugcd(UPoly a, UPoly b);
UPoly upowmod(UPoly base, std::uint64_t e, const UPoly& m);
Gf uevaluate(const UPoly& a, const Gf& t);

/// Distinct roots in F_q, sorted by raw word. `a` must not be identically zero.
std::vector<Gf> roots(const UPoly& a, const GaloisField& field);

/// f(u_0(t), ..., u_n(t)) as a univariate polynomial in t.
UPoly substitute(const MultiPoly<Gf>& f, std::span<const UPoly> values, const GaloisField& field);

}  // namespace a1lab
