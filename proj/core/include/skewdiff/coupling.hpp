#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "skewdiff/experiment.hpp"
#include "skewdiff/sbm.hpp"

namespace skewdiff {

/// Two skew Brownian motions driven by the same Wiener path.
struct CoupledPair {
  SbmParams params1;
  SbmParams params2;
  SbmPath path1;
  SbmPath path2;
};

struct OrderingReport {
  double max_violation = 0.0;      ///< max over paths and nodes of (x1 - x2)+
  double violating_fraction = 0.0; ///< paths whose max violation > tolerance
  double median_violation = 0.0;
  double tolerance = 0.0;
  std::size_t paths = 0;
};

/// Drifts a¹ (mass artanh q1) and a² = a¹ + (A2 - A1)/sqrt(2π) e^{-x²/2}
/// (mass artanh q2), so a²_n >= a¹_n pointwise when q1 <= q2.
std::pair<MollifiedDrift, MollifiedDrift> make_comparable_drifts(double q1, double q2,
                                                                 std::size_t n = 1);

/// Steps both paths with the identical increments of `w`. Both |q| < 1 uses
/// the mollified scheme; both |q| = 1 with the same sign uses the Skorokhod
/// map. Mixed regimes are rejected.
CoupledPair simulate_coupled_pair(const SbmParams& p1, const SbmParams& p2,
                                  std::shared_ptr<const WienerPath> w);

/// Largest (x1 - x2)+ along one pair.
double max_ordering_violation(const CoupledPair& pair);

OrderingReport check_ordering(const CoupledPair& pair, double tolerance);
OrderingReport summarize_ordering(std::span<const double> per_path_max,
                                  double tolerance);

/// Violation tolerance c * sqrt(dt).
double ordering_tolerance(double dt, double c = 5.0);

/// Per-path max violations for a coupled ensemble.
std::vector<double> ordering_violations(const SbmParams& p1, const SbmParams& p2,
                                        const McConfig& cfg);

/// E|x¹(t) - x²(t)| for a common start x, against |q1 - q2| I_t(x).
TargetCheck corollary1_experiment(double x, double q1, double q2, const McConfig& cfg,
                                  double allowance = kSchemeAllowance);

struct Corollary2Report {
  BoundCheck distance;    ///< E|x¹ - x²| <= |Δx0| + |q| |ΔI|
  BoundCheck local_time;  ///< E|η¹ - η²| <= |Δx0|/|q| + |ΔI|
  bool pass() const { return distance.pass && local_time.pass; }
};

/// Common q in (-1, 0) ∪ (0, 1), different starts.
Corollary2Report corollary2_experiment(double x01, double x02, double q,
                                       const McConfig& cfg);

/// |q| = 1: E|x1 - x2|² <= |x01 - x02|² via the exact reflected coupling.
BoundCheck remark1_experiment(double x01, double x02, double q, const McConfig& cfg);

/// q = 0: E|η1 - η2|² <= 16 Δ² + 8 sqrt(t/π) Δ with Tanaka local times.
BoundCheck remark2_experiment(double x01, double x02, const McConfig& cfg);
double remark2_bound(double x01, double x02, double t);

/// One randomized parameter set of the bound suite.
struct BoundSuiteCase {
  double x01 = 0.0;
  double x02 = 0.0;
  double q = 0.0;
  double t = 1.0;
  Corollary2Report corollary2;
  BoundCheck remark1;
  BoundCheck remark2;
  bool pass() const { return corollary2.pass() && remark1.pass && remark2.pass; }
};

/// Draws `cases` parameter sets with |x0i| <= 1, 0 < |q| <= 0.8,
/// t in [0.25, 2] and runs the three bound experiments on each at step `dt`.
/// cfg.horizon and cfg.steps are ignored.
std::vector<BoundSuiteCase> bound_suite(std::size_t cases, double dt, const McConfig& cfg);

}  // namespace skewdiff
