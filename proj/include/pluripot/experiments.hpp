// Desk-scale asymptotic experiments: scaled log-determinant differences
//   L_n = -((d+1) n_d / (2 n d_n)) * (logdet G_n(w') - logdet G_n(w))
// converge to the mutual energy E(V*_{w'}, V*_w) of the associated extremal
// functions; these runners produce per-n tables against closed-form or
// numerically integrated targets.
#pragma once

#include <memory>

#include "pluripot/design.hpp"
#include "pluripot/extremal.hpp"

namespace pluripot {

struct EnergyRow {
  int n = 0;
  double l_n = 0.0;     // scaled logdet difference at this n
  double target = 0.0;  // energy it should approach
  double gap = 0.0;     // |l_n - target|
};

struct EnergyExperimentConfig {
  std::string kind;  // "torus-constant" | "interval-vs-torus" | "self"
  std::shared_ptr<const ConvexBody> body;  // torus-constant only
  int n_min = 1;
  int n_max = 10;
  double c = 0.3;       // constant weight level (torus-constant)
  int energy_n = 1024;  // window resolution for the numeric target
  double energy_extent = 4.0;
  bool richardson = false;  // Richardson-extrapolate the numeric target (N, N/2)
};

/// The d=1 numeric target E(green_[-1,1], log^+) (= log 2 in the limit) on an
/// (n x n) window of half-width `extent`.
double interval_vs_torus_energy(int n, double extent, bool richardson = false);

std::vector<EnergyRow> energy_experiment(const EnergyExperimentConfig& cfg);

/// Scaled logdet difference for the pair (arcsine Gauss grid on [-1,1], w=1)
/// vs (circle Haar, w=1), P = [0,1]; equals (n/(n+1)) log 2 exactly.
double interval_vs_torus_l_n(int n);

struct DimRow {
  int n;
  std::int64_t d_n;
  std::int64_t l_n;
  Rational f_n;
};
std::vector<DimRow> dims_table(const ConvexBody& body, int n_min, int n_max);

struct TfdRow {
  int n;
  std::int64_t d_n;
  std::int64_t l_n;
  double log_wvdm;
  double delta;
};
std::vector<TfdRow> tfd_sweep(const DiscreteMeasure& grid, const WeightSpec& w,
                              std::shared_ptr<const ConvexBody> body, int n_min, int n_max,
                              int max_passes = 20);

}  // namespace pluripot
