#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodge/gap.hpp"
#include "hodge/product.hpp"
#include "hodge/spectra.hpp"

namespace hodge::experiments {

struct RunOptions {
  unsigned long long seed = 0;
  int threads = 1;
  double tol_cluster = 1e-2;
  spectra::SolveOptions solver;
  Index n_gap = 0;  // 0: use min(k, 5)
};

/// True when (p, n) lies inside the convergence theorem's range 2p <= n-3.
bool in_theorem_range(int p, int n);

struct SqueezeSchedule {
  std::vector<double> epsilons;  // strictly decreasing, first may be 1
  std::vector<int> degrees;
  Index k = 5;
  std::optional<int> smoothing_j;  // when set, use the smoothed field per epsilon
};

struct SqueezeDegreeResult {
  int degree = 0;
  Index d_p = 0;  // dim H^p(U/M)
  bool outside_theorem_range = false;
  VecX target;                      // mu_{p,1..k}(U), Absolute
  Index target_kernel_dim = 0;
  std::vector<VecX> squeezed;       // per epsilon: first d_p + k values
  std::vector<VecX> collapsing;     // per epsilon: the d_p collapsing values
  std::vector<VecX> deviations;     // per epsilon: |mu_{k+d_p} - target_k| / target_k
  std::vector<double> max_deviation;  // per epsilon
  std::vector<double> gaps;           // consecutive-epsilon N-gap (size m-1, NaN if unavailable)
  std::vector<bool> gap_aligned;
  bool deviations_monotone = false;   // max deviation nonincreasing along the schedule
  std::vector<std::string> failures;  // per-epsilon failure records (empty if clean)
};

struct SqueezeReport {
  int n = 0;
  std::string mesh_id;
  std::vector<double> epsilons;
  std::vector<double> volumes;
  std::vector<double> volume_identity_error;  // |vol - (vol U + eps^n vol(M\U))|
  double vol_u = 0.0, vol_complement = 0.0;
  std::vector<SqueezeDegreeResult> degrees;
  bool volume_identity_ok = false;

  /// Assertions: every epsilon solved cleanly and the volume identity holds.
  /// Convergence trends are reported as flags, not gated here.
  bool ok() const;
};

SqueezeReport run_squeeze(const CochainComplex& m, const std::vector<Index>& u_cells,
                          const SqueezeSchedule& schedule, const RunOptions& opts = {});

struct FloorReport {
  int n = 0;
  int degree_mid = 0;
  std::vector<double> epsilons;
  std::vector<double> volumes;
  std::vector<double> f_mid;    // mu_{mid,1} * vol^{2/n} per epsilon
  std::vector<double> f_zero;   // same trace at p = 0
  double floor_threshold = 0.25;
  bool floor_ok = false;        // f_mid(eps) >= threshold * f_mid(1) for all eps
  bool contrast_ok = false;     // f_zero(last) < threshold * f_zero(1)
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && floor_ok && contrast_ok; }
};

/// Middle-degree conformal floor with a degree-0 contrast trace. The 0.25
/// threshold is a regression choice, not an analytic constant.
FloorReport run_conformal_floor(const CochainComplex& m, const std::vector<Index>& u_cells,
                                const std::vector<double>& epsilons, Index k = 1,
                                const RunOptions& opts = {});

struct DualityLevel {
  Index level_size = 0;  // p-cochain count, used as the refinement label
  VecX mu_p, mu_q;
  double max_rel_deviation = 0.0;
};

struct DualityReport {
  int p = 0, q = 0;
  std::vector<DualityLevel> levels;
  bool nonincreasing = false;
  bool ok() const { return nonincreasing; }
};

/// Poincare duality trend: mu_{p,i} vs mu_{n-1-p,i} across refinement levels.
DualityReport run_duality(const std::vector<CochainComplex>& levels, int p, Index k,
                          const RunOptions& opts = {});

struct KunnethDegree {
  int degree = 0;
  Index zeros_product = 0;  // b_p of the product
  Index zeros_sums = 0;     // sum of b_q * b_r
  VecX product_values;      // lowest nonzero values of the product
  VecX sum_values;          // lowest nonzero pairwise sums
  double max_rel_deviation = 0.0;
  bool match = false;
};

struct KunnethReport {
  std::vector<KunnethDegree> degrees;
  bool ok() const {
    for (const auto& d : degrees)
      if (!d.match) return false;
    return !degrees.empty();
  }
};

/// Product spectrum vs multiset of pairwise sums of factor spectra, exact at
/// matrix level (1e-9 relative). Ties at the truncation extend k internally.
KunnethReport run_kunneth(const CochainComplex& a, const CochainComplex& b, Index k,
                          const RunOptions& opts = {});

struct SmoothingReport {
  double epsilon = 0.0;
  int degree = 0;
  std::vector<int> js;
  std::vector<double> gaps;       // N-gap between smoothed and sharp problems
  bool gaps_monotone = false;     // nonincreasing in j
  bool domination_ok = false;     // Q_eps <= Q_j on sampled cochains
  bool fields_equal_at_large_j = false;
  bool ok() const { return gaps_monotone && domination_ok && fields_equal_at_large_j; }
};

SmoothingReport run_smoothing(const CochainComplex& m, const std::vector<Index>& u_cells,
                              double eps, const std::vector<int>& js, int degree, Index k,
                              const RunOptions& opts = {});

}  // namespace hodge::experiments
