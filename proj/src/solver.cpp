#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"

namespace iemcoh {

namespace {

Real sup_end_values(const Observable& f, const Iem& t) {
  Real s(1L, f.precision());
  for (Letter a = 0; a < f.size(); ++a) {
    s = max(s, abs(f.left_value(a)));
    s = max(s, abs(f.right_value(a, t.length(a))));
  }
  return s;
}

Real sup_norm(const Observable& f, const Iem& t, std::size_t grid = 32) {
  Real s(0L, f.precision());
  for (Letter a = 0; a < f.size(); ++a) {
    Real len(t.length(a), f.precision());
    for (std::size_t g = 0; g <= grid; ++g) s = max(s, abs(f.eval_local(a, len * static_cast<long>(g) / static_cast<long>(grid))));
  }
  return s;
}

Observable minus_constants(const Observable& phi, const RealVector& chi) {
  std::vector<Polynomial> pieces = phi.pieces();
  for (Letter a = 0; a < pieces.size(); ++a) {
    Real c = chi[a];
    pieces[a][0] -= c;
  }
  return Observable(phi.level(), std::move(pieces), phi.precision());
}

}  // namespace

PhiLevel phi_level(const RenormalizationPath& path, const Observable& phi, std::size_t n, double tolerance) {
  if (phi.level() != 0) fail(ErrorKind::Domain, "phi_level expects an observable at level 0");
  const Iem& t0 = path.base();
  const Real tol(tolerance, phi.precision());
  Real scale0 = sup_end_values(phi, t0);
  for (const auto& b : boundary(phi, t0, vertex_permutation(t0.pi()))) {
    if (abs(b) > tol * scale0) fail(ErrorKind::BoundaryCondition, "datum not in kernel of boundary operator");
  }
  Observable f = special_birkhoff_sum(path, n, phi);
  const Iem& tn = path.level(n);
  const auto& pi = tn.pi();
  const std::size_t d = tn.size();
  PhiLevel out{GammaVector{n, RealVector(d, Real(phi.precision()))}, Real(phi.precision())};
  auto& v = out.phi.entries;
  Letter first = pi.top_letter(1);
  v[first] = f.left_value(first);
  for (int i = 1; i < static_cast<int>(d); ++i) {
    Letter a = pi.top_letter(i), b = pi.top_letter(i + 1);
    v[b] = f.left_value(b) - f.right_value(a, tn.length(a)) + v[a];
  }
  Letter last = pi.top_letter(static_cast<int>(d));
  out.defect = f.right_value(last, tn.length(last)) - v[last];
  if (abs(out.defect) > tol * sup_end_values(f, tn)) {
    fail(ErrorKind::BoundaryCondition, "right-end defect " + out.defect.to_string(6) + " at level " + std::to_string(n));
  }
  return out;
}

std::vector<std::size_t> usable_levels(const RenormalizationPath& path, std::size_t horizon) {
  const double limit = 0.5 * log_of(path.b_from_origin(horizon).norm());
  std::vector<std::size_t> out;
  for (std::size_t n : path.nk()) {
    if (n == 0 || n > horizon) continue;
    if (log_of(path.b_from_origin(n).norm()) > limit) break;
    out.push_back(n);
  }
  return out;
}

ChiSolution solve_chi(const RenormalizationPath& path, const StableSpaceEstimate& est,
                      const std::vector<RealVector>& gamma_u, const Observable& phi, const ChiOptions& opts) {
  const Precision prec = est.precision;
  const std::size_t d = path.base().size();
  ChiSolution sol;
  RealVector prev = phi_level(path, phi, 0, opts.tolerance).phi.entries;
  for (auto& x : prev) x.widen(prec);
  RealVector sum = prev;
  std::size_t prev_n = 0, quiet = 0;
  bool converged = false;
  for (std::size_t n : usable_levels(path, est.horizon)) {
    RealVector cur = phi_level(path, phi, n, opts.tolerance).phi.entries;
    for (auto& x : cur) x.widen(prec);
    RealVector lambda = sub(cur, mat_vec(path.b_matrix(prev_n, n), prev));
    QuotientSolve q = flat_inverse_apply(path, est, 0, n, lambda);
    axpy(sum, Real(1L, prec), q.w);
    const double norm = norm2(q.w).to_double();
    sol.levels.push_back(n);
    sol.term_norms.push_back(norm);
    sol.max_condition = std::max(sol.max_condition, q.condition.to_double());
    quiet = norm < opts.tolerance / 10 ? quiet + 1 : 0;
    prev = std::move(cur);
    prev_n = n;
    if (quiet >= opts.quiet_terms) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::string trace;
    for (double t : sol.term_norms) trace += (trace.empty() ? "" : " ") + Real(t, 53).to_string(3);
    fail(ErrorKind::Convergence, "chi series did not converge within the usable horizon; term norms: [" + trace + "]");
  }
  sol.truncation_level = sol.levels.size();
  // Geometric tail from the last few terms.
  const std::size_t k = std::min<std::size_t>(5, sol.term_norms.size());
  std::vector<double> xs, ys;
  for (std::size_t i = sol.term_norms.size() - k; i < sol.term_norms.size(); ++i) {
    if (sol.term_norms[i] <= 0) continue;
    xs.push_back(static_cast<double>(i));
    ys.push_back(std::log(sol.term_norms[i]));
  }
  double ratio = xs.size() >= 2 ? std::exp(fit_line(xs, ys).slope) : 0.0;
  sol.tail_estimate = ratio < 1 ? sol.term_norms.back() * ratio / (1 - ratio) : INFINITY;
  sol.chi = project(sum, gamma_u);
  if (sol.chi.empty()) sol.chi = zeros(d, prec);
  return sol;
}

CharacterizationReport check_chi_characterization(const RenormalizationPath& path, const Observable& phi,
                                                  const RealVector& chi, const std::vector<std::size_t>& levels,
                                                  const std::vector<double>& tau_grid) {
  CharacterizationReport r;
  Observable diff = minus_constants(phi, chi);
  std::vector<double> xs, ys;
  for (std::size_t n : levels) {
    Observable s = special_birkhoff_sum(path, n, diff);
    double sup = sup_norm(s, path.level(n)).to_double();
    double lb = log_of(path.b_from_origin(n).norm());
    r.levels.push_back(n);
    r.sup_norms.push_back(sup);
    r.log_norm_b.push_back(lb);
    if (n > 0 && sup > 0) {
      xs.push_back(lb);
      ys.push_back(std::log(sup));
    }
  }
  r.exponent = fit_line(xs, ys).slope;
  r.tau_grid = tau_grid;
  for (double tau : tau_grid) {
    double worst = 0;
    for (std::size_t i = 0; i < r.levels.size(); ++i) worst = std::max(worst, r.sup_norms[i] / std::exp(tau * r.log_norm_b[i]));
    r.tau_ratio.push_back(worst);
  }
  return r;
}

Exact default_base_point(const Iem& t) {
  Real s = sqrt(Real(2L, t.precision())) - Real(1L, t.precision());
  return t.left() + t.total() * s.to_exact();
}

PsiSolution solve_psi(const Iem& t, const Observable& phi, const RealVector& chi, const Exact& base_x, std::size_t n) {
  if (n == 0) fail(ErrorKind::Domain, "solve_psi needs at least one sample");
  const Precision prec = phi.precision();
  PsiSolution out;
  std::vector<Exact> xs;
  std::vector<Real> raw, steps;
  xs.reserve(n);
  raw.reserve(n);
  Exact x = base_x;
  Real psi(prec);
  for (std::size_t j = 0; j < n; ++j) {
    Letter a = t.top_letter_at(x);
    Real local(x - t.u()[static_cast<std::size_t>(t.pi().top(a) - 1)], prec);
    Real step = phi.eval_local(a, local);
    Real c = chi[a];
    c.widen(prec);
    step -= c;
    xs.push_back(x);
    raw.push_back(psi);
    steps.push_back(step);
    psi += step;
    x += t.offset(a);
  }
  Real mean(prec), half(prec);
  for (std::size_t j = 0; j < n; ++j) {
    mean += raw[j];
    if (j < n / 2) half += raw[j];
  }
  mean /= static_cast<long>(n);
  out.mean_shift = mean;
  Real sup(prec);
  for (const auto& v : raw) sup = max(sup, abs(v - mean));
  if (n >= 2) {
    half /= static_cast<long>(n / 2);
    Real estimate = abs(half - mean);
    if (estimate > Real(1e-3, prec) * max(sup, Real(1L, prec))) {
      out.warnings.push_back("normalization may be inaccurate: half-orbit mean differs by " + estimate.to_string(3));
    }
  }
  out.residual_sup = Real(prec);
  out.samples.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.samples.push_back({xs[j], raw[j] - mean});
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Real r = out.samples[j + 1].psi - out.samples[j].psi - steps[j];
    out.residual_sup = max(out.residual_sup, abs(r));
  }
  std::sort(out.samples.begin(), out.samples.end(), [](const PsiSample& a, const PsiSample& b) { return a.x < b.x; });
  return out;
}

namespace {

Real interpolate(const std::vector<PsiSample>& s, const Exact& x, const Exact& max_gap, const std::string& where) {
  auto it = std::lower_bound(s.begin(), s.end(), x, [](const PsiSample& p, const Exact& v) { return p.x < v; });
  if (it != s.end() && it->x == x) return it->psi;
  if (it == s.begin() || it == s.end()) {
    const PsiSample& near = it == s.end() ? s.back() : s.front();
    Exact gap = near.x > x ? Exact(near.x - x) : Exact(x - near.x);
    if (gap > max_gap) fail(ErrorKind::Coverage, "insufficient sample density near " + where);
    return near.psi;
  }
  const PsiSample& lo = *(it - 1);
  const PsiSample& hi = *it;
  Exact gap = hi.x - lo.x;
  if (gap > max_gap) fail(ErrorKind::Coverage, "insufficient sample density near " + where);
  const Precision prec = lo.psi.precision();
  return lo.psi + (hi.psi - lo.psi) * Real(Exact((x - lo.x) / gap), prec);
}

}  // namespace

DeltaTable delta_table(const RenormalizationPath& path, const std::vector<PsiSample>& samples, std::size_t k_max,
                       std::optional<Exact> max_gap) {
  if (samples.empty()) fail(ErrorKind::Coverage, "no psi samples");
  const Iem& t0 = path.base();
  Exact gap = max_gap ? *max_gap : t0.total() * 16 / Exact(static_cast<long>(samples.size()));
  DeltaTable table;
  const auto& nk = path.nk();
  for (std::size_t k = 0; k <= k_max && k < nk.size(); ++k) {
    const Iem& tn = path.level(nk[k]);
    std::vector<Real> v;
    for (Letter a = 0; a < tn.size(); ++a) {
      const Exact& left = tn.u()[static_cast<std::size_t>(tn.pi().top(a) - 1)];
      std::string where = "interval " + tn.pi().label(a) + " at level k=" + std::to_string(k);
      v.push_back(interpolate(samples, left + tn.length(a), gap, where) - interpolate(samples, left, gap, where));
    }
    table.levels.push_back(nk[k]);
    table.v.push_back(std::move(v));
  }
  for (std::size_t k = 0; k + 1 < table.levels.size(); ++k) {
    IntMatrix bt = path.b_matrix(table.levels[k], table.levels[k + 1]).transpose();
    const std::size_t d = bt.rows();
    const Precision prec = table.v[k].front().precision();
    // (B^T)^{-1} V(k) by an exact solve on the rounded data.
    ExactVector rhs;
    for (const auto& x : table.v[k]) rhs.push_back(x.to_exact());
    ExactVector pulled = solve_exact(bt, rhs);
    double worst = 0;
    for (std::size_t a = 0; a < d; ++a) worst = std::max(worst, abs(table.v[k + 1][a] - Real(pulled[a], prec)).to_double());
    table.recursion_residual.push_back(worst);
  }
  return table;
}

std::vector<std::pair<double, double>> to_doubles(const std::vector<PsiSample>& samples) {
  std::vector<std::pair<double, double>> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.emplace_back(to_double(s.x), s.psi.to_double());
  return out;
}

HolderFit holder_fit(const std::vector<std::pair<double, double>>& samples_in, std::size_t pair_budget,
                     std::uint64_t seed) {
  if (samples_in.size() < 100) fail(ErrorKind::Domain, "holder_fit needs at least 100 samples");
  auto samples = samples_in;
  std::sort(samples.begin(), samples.end());
  HolderFit fit;
  const std::size_t n = samples.size();
  double lo = samples.front().second, hi = lo;
  for (const auto& s : samples) {
    lo = std::min(lo, s.second);
    hi = std::max(hi, s.second);
  }
  if (hi - lo <= 1e-300 || hi - lo <= 1e-14 * std::max(std::fabs(hi), std::fabs(lo))) {
    fit.flat = true;
    return fit;
  }
  const double span = samples.back().first - samples.front().first;
  double max_gap = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) max_gap = std::max(max_gap, samples[i + 1].first - samples[i].first);
  // Dyadic scales from an eighth of the span down to 16 times the widest gap
  // (pair distances are then within a few percent of nominal), keeping at
  // least three bins.
  std::vector<double> scales;
  for (double h = span / 8; h >= 16 * max_gap || scales.size() < 3; h /= 2) scales.push_back(h);
  if (scales.size() < 3) fail(ErrorKind::Domain, "too few samples for a dyadic Hölder fit");
  const std::size_t per_scale = std::max<std::size_t>(1, pair_budget / scales.size());
  std::mt19937_64 rng(seed);
  std::vector<double> xs, ys;
  for (double h : scales) {
    HolderBin bin;
    bin.distance = h;
    auto pair_at = [&](std::size_t i) {
      const double target = samples[i].first + h;
      auto it = std::lower_bound(samples.begin(), samples.end(), std::make_pair(target, -HUGE_VAL));
      std::size_t j = static_cast<std::size_t>(it - samples.begin());
      if (j >= n) return;
      if (j > i + 1 && std::fabs(samples[j - 1].first - target) < std::fabs(samples[j].first - target)) --j;
      if (j <= i) return;
      const double dist = samples[j].first - samples[i].first;
      if (dist < h / 2 || dist > 2 * h) return;
      bin.max_diff = std::max(bin.max_diff, std::fabs(samples[j].second - samples[i].second));
      ++bin.pairs;
    };
    if (n <= per_scale) {
      for (std::size_t i = 0; i < n; ++i) pair_at(i);
    } else {
      for (std::size_t k = 0; k < per_scale; ++k) pair_at(static_cast<std::size_t>(rng() % n));
    }
    if (bin.pairs == 0 || bin.max_diff <= 0) continue;
    fit.bins.push_back(bin);
    xs.push_back(std::log(bin.distance));
    ys.push_back(std::log(bin.max_diff));
  }
  if (xs.size() < 2) {
    fit.flat = true;
    return fit;
  }
  LineFit line = fit_line(xs, ys);
  fit.delta_hat = std::clamp(line.slope, 0.0, 1.5);
  fit.fit_quality = line.r2;
  return fit;
}

}  // namespace iemcoh
