#include "hodge/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include "hodge/cohomology.hpp"

namespace hodge::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for(int threads, Index jobs, const std::function<void(Index)>& body) {
  if (threads <= 1 || jobs <= 1) {
    for (Index i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  const int nt = std::min<Index>(threads, jobs);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (Index i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

bool nonincreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (std::isnan(v[i]) || std::isnan(v[i - 1])) return false;
    if (v[i] > v[i - 1] + 1e-12) return false;
  }
  return !v.empty();
}

}  // namespace

bool in_theorem_range(int p, int n) { return 2 * p <= n - 3; }

bool SqueezeReport::ok() const {
  if (!volume_identity_ok) return false;
  for (const auto& d : degrees)
    if (!d.failures.empty()) return false;
  return true;
}

SqueezeReport run_squeeze(const CochainComplex& m, const std::vector<Index>& u_cells,
                          const SqueezeSchedule& schedule, const RunOptions& opts) {
  if (schedule.epsilons.empty())
    throw Error(ErrorKind::InvalidInput, "empty squeeze schedule");
  for (size_t i = 1; i < schedule.epsilons.size(); ++i)
    if (!(schedule.epsilons[i] < schedule.epsilons[i - 1]))
      throw Error(ErrorKind::InvalidInput, "squeeze schedule must be strictly decreasing");
  for (int p : schedule.degrees)
    if (p < 0 || p >= m.n)
      throw Error(ErrorKind::InvalidInput, "squeeze degree outside [0, n-1]");

  SqueezeReport rep;
  rep.n = m.n;
  rep.epsilons = schedule.epsilons;
  const size_t ne = schedule.epsilons.size();

  // region volumes for the closed-form volume identity
  std::vector<char> in_u(m.cells.size(), 0);
  for (Index t : u_cells) in_u[static_cast<size_t>(t)] = 1;
  for (size_t t = 0; t < m.cells.size(); ++t)
    (in_u[t] ? rep.vol_u : rep.vol_complement) += m.cells[t].volume;

  rep.volumes.assign(ne, kNaN);
  rep.volume_identity_error.assign(ne, kNaN);
  std::vector<ConformalField> fields(ne);
  for (size_t e = 0; e < ne; ++e) {
    const double eps = schedule.epsilons[e];
    fields[e] = schedule.smoothing_j ? smoothing_sequence(m, u_cells, eps, *schedule.smoothing_j)
                                     : squeeze_field(m, u_cells, eps);
    rep.volumes[e] = volume(m, fields[e]);
    if (!schedule.smoothing_j) {
      const double closed_form = rep.vol_u + int_pow(eps, m.n) * rep.vol_complement;
      rep.volume_identity_error[e] = std::abs(rep.volumes[e] - closed_form);
    } else {
      rep.volume_identity_error[e] = 0.0;
    }
  }
  rep.volume_identity_ok = true;
  for (double err : rep.volume_identity_error)
    rep.volume_identity_ok &= err <= 1e-12 * std::max(1.0, rep.vol_u + rep.vol_complement);

  // target complex: the closure of U with the inherited metric
  RestrictedComplex target_cx = restrict_to_cells(m, u_cells);
  const ConformalField target_field = unit_field(target_cx.cc);

  for (int p : schedule.degrees) {
    SqueezeDegreeResult deg;
    deg.degree = p;
    deg.outside_theorem_range = !in_theorem_range(p, m.n);
    deg.d_p = relative_cohomology_dim(m, u_cells, p);

    // target spectrum on U with (A)
    spectra::SolveOptions sopts = opts.solver;
    sopts.seed = opts.seed;
    try {
      auto tprob = spectra::assemble(target_cx.cc, target_field, p,
                                     spectra::BoundaryCondition::Absolute);
      auto tsolve = spectra::solve_coexact(tprob, schedule.k, sopts);
      deg.target = tsolve.values;
      deg.target_kernel_dim = tsolve.kernel_dim;
    } catch (const Error& err) {
      deg.failures.push_back(std::string("target: ") + err.what());
    }

    deg.squeezed.assign(ne, VecX());
    deg.collapsing.assign(ne, VecX());
    deg.deviations.assign(ne, VecX());
    deg.max_deviation.assign(ne, kNaN);
    std::vector<MatX> vectors(ne);
    std::vector<SpMat> masses(ne), stiffs(ne);
    std::vector<std::string> eps_failures(ne);

    parallel_for(opts.threads, static_cast<Index>(ne), [&](Index e) {
      try {
        auto prob = spectra::assemble(m, fields[static_cast<size_t>(e)], p,
                                      spectra::BoundaryCondition::Absolute);
        auto solve = spectra::solve_coexact(prob, deg.d_p + schedule.k, sopts);
        deg.squeezed[static_cast<size_t>(e)] = solve.values;
        vectors[static_cast<size_t>(e)] = solve.vectors;
        masses[static_cast<size_t>(e)] = prob.mass;
        stiffs[static_cast<size_t>(e)] = prob.stiffness;
      } catch (const Error& err) {
        eps_failures[static_cast<size_t>(e)] =
            "epsilon " + std::to_string(schedule.epsilons[static_cast<size_t>(e)]) + ": " +
            err.what();
      }
    });
    for (const auto& msg : eps_failures)
      if (!msg.empty()) deg.failures.push_back(msg);

    // order-preserving pairing after discarding the d_p collapsing values
    if (deg.failures.empty()) {
      for (size_t e = 0; e < ne; ++e) {
        const VecX& sq = deg.squeezed[e];
        deg.collapsing[e] = sq.head(std::min<Index>(deg.d_p, sq.size()));
        const Index avail = std::max<Index>(0, sq.size() - deg.d_p);
        const Index kk = std::min<Index>(avail, deg.target.size());
        VecX dev(kk);
        for (Index i = 0; i < kk; ++i)
          dev[i] = std::abs(sq[deg.d_p + i] - deg.target[i]) / deg.target[i];
        deg.deviations[e] = dev;
        deg.max_deviation[e] = kk > 0 ? dev.maxCoeff() : kNaN;
      }
      deg.deviations_monotone = nonincreasing(deg.max_deviation);

      // N-gap between consecutive epsilons, in the later epsilon's mass
      const Index ngap = opts.n_gap > 0 ? opts.n_gap : std::min<Index>(schedule.k, 5);
      deg.gaps.assign(ne - 1, kNaN);
      deg.gap_aligned.assign(ne - 1, false);
      for (size_t e = 0; e + 1 < ne; ++e) {
        const Index n0 = std::min({ngap, static_cast<Index>(vectors[e].cols()),
                                   static_cast<Index>(vectors[e + 1].cols())});
        if (n0 < 1) continue;
        try {
          auto pack0 = gap::restrict_form(vectors[e].leftCols(n0), masses[e + 1], stiffs[e]);
          auto pack1 =
              gap::restrict_form(vectors[e + 1].leftCols(n0), masses[e + 1], stiffs[e + 1]);
          auto g = gap::n_gap(pack0, pack1, masses[e + 1]);
          deg.gaps[e] = g.gap;
          deg.gap_aligned[e] = g.aligned;
        } catch (const Error&) {
          // subspaces too far: leave NaN, aligned = false
        }
      }
    }
    rep.degrees.push_back(std::move(deg));
  }
  return rep;
}

FloorReport run_conformal_floor(const CochainComplex& m, const std::vector<Index>& u_cells,
                                const std::vector<double>& epsilons, Index k,
                                const RunOptions& opts) {
  if (m.n < 3)
    throw Error(ErrorKind::InvalidInput, "conformal floor experiment needs n >= 3");
  std::vector<double> eps = epsilons;
  if (eps.empty() || eps.front() != 1.0) eps.insert(eps.begin(), 1.0);

  FloorReport rep;
  rep.n = m.n;
  rep.degree_mid = (m.n - 1) / 2;
  rep.epsilons = eps;
  const size_t ne = eps.size();
  rep.volumes.assign(ne, kNaN);
  rep.f_mid.assign(ne, kNaN);
  rep.f_zero.assign(ne, kNaN);

  spectra::SolveOptions sopts = opts.solver;
  sopts.seed = opts.seed;
  std::vector<std::string> failures(ne);
  parallel_for(opts.threads, static_cast<Index>(ne), [&](Index e) {
    try {
      ConformalField f = squeeze_field(m, u_cells, eps[static_cast<size_t>(e)]);
      const double vol = volume(m, f);
      rep.volumes[static_cast<size_t>(e)] = vol;
      const double vol_pow = std::pow(vol, 2.0 / m.n);
      auto mid = spectra::solve_coexact(
          spectra::assemble(m, f, rep.degree_mid, spectra::BoundaryCondition::Absolute), k, sopts);
      auto zero = spectra::solve_coexact(
          spectra::assemble(m, f, 0, spectra::BoundaryCondition::Absolute), k, sopts);
      if (mid.values.size() < 1 || zero.values.size() < 1)
        throw Error(ErrorKind::SolverFailure, "empty spectrum in floor run");
      rep.f_mid[static_cast<size_t>(e)] = mid.values[0] * vol_pow;
      rep.f_zero[static_cast<size_t>(e)] = zero.values[0] * vol_pow;
    } catch (const Error& err) {
      failures[static_cast<size_t>(e)] =
          "epsilon " + std::to_string(eps[static_cast<size_t>(e)]) + ": " + err.what();
    }
  });
  for (const auto& msg : failures)
    if (!msg.empty()) rep.failures.push_back(msg);

  if (rep.failures.empty()) {
    rep.floor_ok = true;
    for (size_t e = 0; e < ne; ++e)
      rep.floor_ok &= rep.f_mid[e] >= rep.floor_threshold * rep.f_mid[0];
    rep.contrast_ok = rep.f_zero[ne - 1] < rep.floor_threshold * rep.f_zero[0];
  }
  return rep;
}

DualityReport run_duality(const std::vector<CochainComplex>& levels, int p, Index k,
                          const RunOptions& opts) {
  if (levels.empty()) throw Error(ErrorKind::InvalidInput, "no refinement levels");
  DualityReport rep;
  rep.p = p;
  rep.q = levels.front().n - 1 - p;
  spectra::SolveOptions sopts = opts.solver;
  sopts.seed = opts.seed;

  for (const auto& cc : levels) {
    if (p < 0 || p >= cc.n || rep.q != cc.n - 1 - p)
      throw Error(ErrorKind::InvalidInput, "duality degrees out of range");
    ConformalField f = unit_field(cc);
    auto sp = spectra::solve_coexact(spectra::assemble(cc, f, p, spectra::BoundaryCondition::Absolute),
                                     k, sopts);
    auto sq = spectra::solve_coexact(
        spectra::assemble(cc, f, rep.q, spectra::BoundaryCondition::Absolute), k, sopts);
    DualityLevel lvl;
    lvl.level_size = cc.count(p);
    lvl.mu_p = sp.values;
    lvl.mu_q = sq.values;
    const Index kk = std::min(sp.values.size(), sq.values.size());
    for (Index i = 0; i < kk; ++i)
      lvl.max_rel_deviation = std::max(
          lvl.max_rel_deviation, std::abs(sp.values[i] - sq.values[i]) / sp.values[i]);
    rep.levels.push_back(std::move(lvl));
  }
  std::vector<double> devs;
  for (const auto& l : rep.levels) devs.push_back(l.max_rel_deviation);
  rep.nonincreasing = nonincreasing(devs);
  return rep;
}

namespace {

/// Full spectrum of a factor as an explicit list: b_p zeros then every
/// nonzero eigenvalue (dense solve of both contributing pencils).
std::pair<Index, std::vector<double>> factor_full_spectrum(const CochainComplex& cc, int p,
                                                           const spectra::SolveOptions& opts) {
  const ConformalField f = unit_field(cc);
  std::vector<double> values;
  Index closed_dim = 0, rank_down = 0;
  if (p < cc.n) {
    auto prob = spectra::assemble(cc, f, p, spectra::BoundaryCondition::Absolute);
    auto up = spectra::solve_coexact(prob, prob.size(), opts);
    closed_dim = up.kernel_dim;
    for (Index i = 0; i < up.values.size(); ++i) values.push_back(up.values[i]);
  } else {
    closed_dim = cc.count(p);
  }
  if (p >= 1) {
    auto prob = spectra::assemble(cc, f, p - 1, spectra::BoundaryCondition::Absolute);
    auto down = spectra::solve_coexact(prob, prob.size(), opts);
    rank_down = static_cast<Index>(prob.dof_keep.size()) - down.kernel_dim;
    for (Index i = 0; i < down.values.size(); ++i) values.push_back(down.values[i]);
  }
  std::sort(values.begin(), values.end());
  return {closed_dim - rank_down, values};
}

}  // namespace

KunnethReport run_kunneth(const CochainComplex& a, const CochainComplex& b, Index k,
                          const RunOptions& opts) {
  spectra::SolveOptions sopts = opts.solver;
  sopts.seed = opts.seed;

  CochainComplex prod = tensor_product_complex(a, b);
  const ConformalField fp = unit_field(prod);

  // factor full spectra, complete (factors are small by contract)
  std::vector<std::pair<Index, std::vector<double>>> full_a, full_b;
  for (int q = 0; q <= a.n; ++q) full_a.push_back(factor_full_spectrum(a, q, sopts));
  for (int r = 0; r <= b.n; ++r) full_b.push_back(factor_full_spectrum(b, r, sopts));

  KunnethReport rep;
  for (int p = 0; p <= prod.n; ++p) {
    KunnethDegree deg;
    deg.degree = p;

    // pairwise sums over bidegrees
    std::vector<double> sums;
    Index zero_count = 0;
    for (int q = std::max(0, p - b.n); q <= std::min(p, a.n); ++q) {
      const auto& [za, va] = full_a[static_cast<size_t>(q)];
      const auto& [zb, vb] = full_b[static_cast<size_t>(p - q)];
      zero_count += za * zb;
      for (Index i = 0; i < za; ++i)
        for (double y : vb) sums.push_back(y);
      for (double x : va) {
        for (Index i = 0; i < zb; ++i) sums.push_back(x);
        for (double y : vb) sums.push_back(x + y);
      }
    }
    std::sort(sums.begin(), sums.end());
    deg.zeros_sums = zero_count;

    // product side
    Index k_nonzero = std::min<Index>(k, static_cast<Index>(sums.size()));
    // tie extension at the truncation point
    while (k_nonzero < static_cast<Index>(sums.size()) && k_nonzero > 0 &&
           sums[static_cast<size_t>(k_nonzero)] - sums[static_cast<size_t>(k_nonzero - 1)] <=
               1e-9 * std::max(1.0, sums[static_cast<size_t>(k_nonzero - 1)]))
      ++k_nonzero;

    std::vector<double> prod_values;
    Index b_p = 0;
    if (p < prod.n) {
      auto prob = spectra::assemble(prod, fp, p, spectra::BoundaryCondition::Absolute);
      auto up = spectra::solve_coexact(prob, std::min<Index>(k_nonzero, prob.size()), sopts);
      b_p = up.kernel_dim;
      for (Index i = 0; i < up.values.size(); ++i) prod_values.push_back(up.values[i]);
    } else {
      b_p = prod.count(p);
    }
    if (p >= 1) {
      auto prob = spectra::assemble(prod, fp, p - 1, spectra::BoundaryCondition::Absolute);
      auto down = spectra::solve_coexact(prob, std::min<Index>(k_nonzero, prob.size()), sopts);
      b_p -= static_cast<Index>(prob.dof_keep.size()) - down.kernel_dim;
      for (Index i = 0; i < down.values.size(); ++i) prod_values.push_back(down.values[i]);
    }
    std::sort(prod_values.begin(), prod_values.end());
    deg.zeros_product = b_p;

    const Index nn = std::min<Index>(k_nonzero, static_cast<Index>(prod_values.size()));
    deg.product_values = Eigen::Map<const VecX>(prod_values.data(), nn);
    deg.sum_values = Eigen::Map<const VecX>(sums.data(), nn);
    deg.match = (deg.zeros_product == deg.zeros_sums);
    for (Index i = 0; i < nn; ++i) {
      const double denom = std::max({std::abs(deg.product_values[i]), std::abs(deg.sum_values[i]), 1e-30});
      const double rel = std::abs(deg.product_values[i] - deg.sum_values[i]) / denom;
      deg.max_rel_deviation = std::max(deg.max_rel_deviation, rel);
    }
    deg.match &= deg.max_rel_deviation <= 1e-9;
    rep.degrees.push_back(std::move(deg));
  }
  return rep;
}

SmoothingReport run_smoothing(const CochainComplex& m, const std::vector<Index>& u_cells,
                              double eps, const std::vector<int>& js, int degree, Index k,
                              const RunOptions& opts) {
  SmoothingReport rep;
  rep.epsilon = eps;
  rep.degree = degree;
  rep.js = js;

  spectra::SolveOptions sopts = opts.solver;
  sopts.seed = opts.seed;

  const ConformalField sharp = squeeze_field(m, u_cells, eps);
  auto sharp_prob = spectra::assemble(m, sharp, degree, spectra::BoundaryCondition::Absolute);
  auto sharp_solve = spectra::solve_coexact(sharp_prob, k, sopts);
  const Index ngap =
      std::min<Index>(opts.n_gap > 0 ? opts.n_gap : std::min<Index>(k, 5), sharp_solve.values.size());

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> dist;

  rep.domination_ok = true;
  for (int j : js) {
    const ConformalField fj = smoothing_sequence(m, u_cells, eps, j);
    auto prob_j = spectra::assemble(m, fj, degree, spectra::BoundaryCondition::Absolute);
    auto solve_j = spectra::solve_coexact(prob_j, k, sopts);

    // Q_eps <= Q_j on sampled cochains (both stiffnesses live on all dofs)
    for (int s = 0; s < 16; ++s) {
      VecX x(sharp_prob.size());
      for (Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
      const double q_eps = x.dot(sharp_prob.stiffness * x);
      const double q_j = x.dot(prob_j.stiffness * x);
      rep.domination_ok &= q_eps <= q_j * (1.0 + 1e-12) + 1e-12;
    }

    const Index nn = std::min<Index>(ngap, solve_j.values.size());
    if (nn >= 1) {
      auto pack_sharp = gap::restrict_form(sharp_solve.vectors.leftCols(nn), sharp_prob.mass,
                                           sharp_prob.stiffness);
      auto pack_j =
          gap::restrict_form(solve_j.vectors.leftCols(nn), sharp_prob.mass, prob_j.stiffness);
      rep.gaps.push_back(gap::n_gap(pack_j, pack_sharp, sharp_prob.mass).gap);
    } else {
      rep.gaps.push_back(kNaN);
    }
  }
  rep.gaps_monotone = nonincreasing(rep.gaps);

  // beyond the largest distance the smoothed field equals the sharp one
  const auto dist_cells = cell_distances(m, u_cells);
  int dmax = 0;
  for (int d : dist_cells) dmax = std::max(dmax, d);
  const ConformalField f_far = smoothing_sequence(m, u_cells, eps, dmax + 1);
  rep.fields_equal_at_large_j = (f_far.factor - sharp.factor).cwiseAbs().maxCoeff() == 0.0;
  return rep;
}

}  // namespace hodge::experiments
