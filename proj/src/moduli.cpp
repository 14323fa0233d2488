#include "a1lab/moduli.hpp"

#include <numeric>

namespace a1lab {

std::vector<int> delta_type(const PairType& type) {
  if (type.k != 1) throw UnsupportedError("the node locus needs a pair of type (d_1, ..., d_c; 1)");
  std::vector<int> out;
  for (int d : type.degrees) {
    for (int j = 1; j < d; ++j) {
      out.push_back(j);
      out.push_back(j);
    }
    out.push_back(d);
  }
  out.push_back(1);
  return out;
}

ConicFiberType conic_fiber_type(const PairType& type) {
  ConicFiberType out;
  out.type = delta_type(type);
  out.type.pop_back();
  out.degree_sum = std::accumulate(out.type.begin(), out.type.end(), 0);
  if (out.degree_sum != type.sum_of_squares()) throw ConsistencyError("fiber degree sum differs from sum of d_i^2");
  out.rationally_connected_bound = out.degree_sum <= type.n;
  return out;
}

DeltaMetadata delta_degree_metadata(const PairType& type) {
  if (type.k != 1) throw UnsupportedError("the node-locus degrees are defined for pairs of type (d_1, ..., d_c; 1)");
  DeltaMetadata m;
  if (m.delta_prime_degree != m.pullback_multiplicity * m.delta_degree)
    throw ConsistencyError("degree metadata is inconsistent");
  return m;
}

}  // namespace a1lab
