#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "solver.hpp"

namespace iemcoh {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Warn: return "warn";
    case Verdict::InsufficientHorizon: return "insufficient-horizon";
  }
  return "?";
}

ConditionA condition_a(const RenormalizationPath& path, const Thresholds& th) {
  ConditionA c;
  const auto& nk = path.nk();
  if (nk.size() < 4) return c;
  for (std::size_t k = 1; k + 1 < nk.size(); ++k) {
    c.levels.push_back(nk[k]);
    c.ratios.push_back(log_of(path.b_matrix(nk[k], nk[k + 1]).norm()) / log_of(path.b_from_origin(nk[k]).norm()));
  }
  // The condition is about the tail; early blocks are as large as the whole.
  c.window_start = c.ratios.size() / 2;
  c.tau_hat = *std::max_element(c.ratios.begin() + static_cast<long>(c.window_start), c.ratios.end());
  c.verdict = c.tau_hat < th.tau ? Verdict::Pass : Verdict::Warn;
  return c;
}

Exact restricted_norm(const IntMatrix& m, const ExactVector& w) {
  const std::size_t d = w.size();
  Exact best = 0;
  for (std::size_t free = 0; free < d; ++free) {
    if (w[free] == 0) continue;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (d - 1)); ++mask) {
      ExactVector chi(d);
      Exact rest = 0;
      std::size_t bit = 0;
      for (std::size_t a = 0; a < d; ++a) {
        if (a == free) continue;
        chi[a] = (mask >> bit++) & 1 ? Exact(1) : Exact(-1);
        rest += w[a] * chi[a];
      }
      chi[free] = -rest / w[free];
      if (abs(chi[free]) > 1) continue;
      for (const auto& y : m.apply(chi)) best = std::max(best, Exact(abs(y)));
    }
  }
  return best;
}

ConditionB condition_b(const RenormalizationPath& path, const Thresholds& th) {
  ConditionB c;
  const auto& nk = path.nk();
  if (nk.size() < 4) return c;
  const ExactVector& lambda = path.base().lengths();
  const Precision prec = path.base().precision();
  for (std::size_t n : nk) {
    if (n == 0) continue;
    const IntMatrix& b = path.b_from_origin(n);
    c.levels.push_back(n);
    c.log_full.push_back(log_of(b.norm()));
    c.log_restricted.push_back(log_of(Real(restricted_norm(b, lambda), prec)));
  }
  c.slope = fit_line(c.log_full, c.log_restricted).slope;
  c.theta_hat = 1 - c.slope;
  c.verdict = c.theta_hat > th.theta ? Verdict::Pass : Verdict::Warn;
  return c;
}

ConditionC condition_c(const RenormalizationPath& path, const StableSpaceEstimate& est, const Thresholds& th) {
  ConditionC c;
  std::vector<std::size_t> grid{0};
  for (std::size_t n : usable_levels(path, est.horizon)) grid.push_back(n);
  if (grid.size() < 3) return c;
  const Precision prec = est.precision;
  std::vector<std::vector<RealVector>> stable;
  for (std::size_t m : grid) stable.push_back(stable_at(path, est, m));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::size_t n = grid[j];
    const auto unstable = unstable_complement_at(path, est, n);
    double worst_s = -HUGE_VAL, worst_f = -HUGE_VAL;
    for (std::size_t i = 0; i <= j; ++i) {
      const std::size_t m = grid[i];
      const IntMatrix b = path.b_matrix(m, n);
      std::vector<RealVector> cols;
      for (const auto& q : stable[i]) cols.push_back(mat_vec(b, q));
      if (!cols.empty()) {
        Svd s = svd(RealMatrix::from_columns(cols, b.rows(), prec));
        worst_s = std::max(worst_s, log_of(s.singular.front()));
      }
      for (const auto& u : unstable) {
        try {
          worst_f = std::max(worst_f, log_of(norm2(flat_inverse_apply(path, est, m, n, u).w)));
        } catch (const Error& e) {
          c.warnings.push_back("quotient solve (" + std::to_string(m) + "," + std::to_string(n) + "): " + e.what());
        }
      }
    }
    c.levels.push_back(n);
    c.log_full.push_back(log_of(path.b_from_origin(n).norm()));
    c.log_stable.push_back(worst_s);
    c.log_flat_inverse.push_back(worst_f);
  }
  // Fit over n > 0 (the n = 0 point is the trivial diagonal).
  std::vector<double> x(c.log_full.begin() + 1, c.log_full.end());
  std::vector<double> ys(c.log_stable.begin() + 1, c.log_stable.end());
  std::vector<double> yf(c.log_flat_inverse.begin() + 1, c.log_flat_inverse.end());
  c.stable_exponent = fit_line(x, ys).slope;
  c.flat_inverse_exponent = fit_line(x, yf).slope;
  const bool stable_pass = c.stable_exponent < th.tau;
  const bool flat_pass = c.flat_inverse_exponent < th.tau;
  c.joint_consistent = !stable_pass || flat_pass;
  c.verdict = stable_pass && flat_pass && c.warnings.empty() ? Verdict::Pass : Verdict::Warn;
  return c;
}

ConditionD condition_d(const StableSpaceEstimate& est, const CombinatorialData& pi, const Thresholds& th) {
  ConditionD c;
  c.genus = est.target_dim;
  c.stable_dim = est.basis.size();
  c.ker_omega_dim = pi.size() - omega_matrix(pi).rank();
  c.gap_ratio = est.gap_ratio.to_double();
  c.singular_values = est.singular_values;
  c.verdict = c.gap_ratio > th.gap && c.stable_dim == static_cast<std::size_t>(c.genus) ? Verdict::Pass : Verdict::Warn;
  return c;
}

RothReport diagnose(const RenormalizationPath& path, const StableSpaceEstimate& est, const Thresholds& th) {
  RothReport r;
  r.horizon = est.horizon;
  r.a = condition_a(path, th);
  r.b = condition_b(path, th);
  r.c = condition_c(path, est, th);
  r.d = condition_d(est, path.base().pi(), th);
  r.sigma_hat = est.sigma_hat;
  return r;
}

}  // namespace iemcoh
