#pragma once

#include "viscolab/grid.hpp"

namespace viscolab {

/// Two-sided maximum-principle bookkeeping for a solved field:
///   max-side: (max u - max boundary u)^+ against ||f^-||_p
///   min-side: (min boundary u - min u)^+ against ||f^+||_p
struct ABPReport {
  double p = 0.0;
  double max_all = 0.0, max_boundary = 0.0;
  double min_all = 0.0, min_boundary = 0.0;
  double excess_max = 0.0;   // (max_all - max_boundary)^+
  double excess_min = 0.0;   // (min_boundary - min_all)^+
  double f_minus_norm = 0.0;
  double f_plus_norm = 0.0;
  double ratio_max = 0.0;    // excess_max / f_minus_norm (inf when norm ~ 0)
  double ratio_min = 0.0;
  double mu_gate_value = 0.0;
  bool mu_gate_ok = true;
};

ABPReport abp_check(const GridFunction& u, const GridFunction& f, double p,
                    double mu = 0.0, double gate_delta = 1.0);

}  // namespace viscolab
