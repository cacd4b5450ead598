#pragma once

#include <cstdint>
#include <string>

#include "viscolab/operator_spec.hpp"

namespace viscolab {

/// Witness tuple for a structure-condition margin.
struct StructureWitness {
  Point x{0, 0};
  double r = 0, s = 0;
  Point p{0, 0}, q{0, 0};
  SymMatrix X, Y;
  double margin = 0.0;        // negative means violated
  std::string side;           // "upper" or "lower"
};

struct StructureReport {
  bool pass = true;
  bool normalization_ok = true;  // F(x,0,0,0) == 0 at sampled x
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;     // min margin over all samples and sides
  StructureWitness worst;
};

/// Samples the two-sided structure inequality
///   M^-(X-Y) - b|p-q| - mu|p-q|(|p|+|q|) - d w(|r-s|)
///     <= F(x,r,p,X) - F(x,s,q,Y) <=
///   M^+(X-Y) + b|p-q| + mu|p-q|(|p|+|q|) + d w(|r-s|)
/// against the declared params of F. A fixed set of canonical probes
/// (X = +-I vs 0, unit gradients, unit zero-order offsets) runs before the
/// seeded random tuples so violations of envelope equalities produce a
/// deterministic witness.
StructureReport check_structure_condition(const OperatorSpec& F, int dim,
                                          int samples = 10000,
                                          std::uint64_t seed = 2024);

}  // namespace viscolab
