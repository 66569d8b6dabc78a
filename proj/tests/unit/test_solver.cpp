#include "doctest.h"

#include <cmath>

#include "error.hpp"
#include "helpers.hpp"
#include "solver.hpp"

using namespace iemcoh;
using namespace testing_support;

namespace {

std::vector<Real> coeffs(std::initializer_list<double> c) {
  std::vector<Real> out;
  for (double x : c) out.emplace_back(x, 256);
  return out;
}

struct Setup {
  RenormalizationPath path;
  StableSpaceEstimate est;
  std::vector<RealVector> gamma_u;
};

Setup make(const Iem& t, std::size_t steps, int g) {
  RenormalizationPath path = iterate(t, steps);
  StableSpaceEstimate est = stable_space(path, path.length(), g);
  auto gu = unstable_complement(est, t.pi());
  return {std::move(path), std::move(est), std::move(gu)};
}

Iem reversal4(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return Iem(reversal(4), random_lengths(rng, 4));
}

double max_abs(const RealVector& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::fabs(x.to_double()));
  return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("Phi(n) of piecewise constants is B(0,n) applied to the values") {
  Iem t = reversal4(41);
  RenormalizationPath path = iterate(t, 200);
  std::vector<Real> values = coeffs({0.5, -1.25, 2.0, 0.75});
  Observable phi = Observable::constant(values, 0);
  for (std::size_t n : {0ul, 7ul, 40ul, 150ul}) {
    PhiLevel pl = phi_level(path, phi, n);
    ExactVector ex;
    for (const auto& v : values) ex.push_back(v.to_exact());
    ExactVector oracle = path.b_from_origin(n).apply(ex);
    for (std::size_t a = 0; a < 4; ++a) CHECK(abs(pl.phi.entries[a] - Real(oracle[a], 256)) < Real(1e-60, 256));
    CHECK(abs(pl.defect) < Real(1e-60, 256));
  }
}

TEST_CASE("Phi(n) rejects data outside the kernel of the boundary operator") {
  // ABC over CBA has two marked points, so generic constants are not in the kernel.
  Iem t = from_doubles(reversal(3), {0.3, 0.45, 0.25});
  REQUIRE(vertex_permutation(t.pi()).cycles.size() == 2);
  RenormalizationPath path = iterate(t, 10);
  Observable phi = Observable::constant(coeffs({1.0, 0.0, 0.0}), 0);
  CHECK_THROWS_WITH_AS(phi_level(path, phi, 3), "datum not in kernel of boundary operator", Error);
  // The kernel direction (1, 0, -1)·... is accepted: check via the boundary matrix nullspace.
  auto vp = vertex_permutation(t.pi());
  auto kernel = nullspace(boundary_matrix(t.pi(), vp));
  REQUIRE_FALSE(kernel.empty());
  std::vector<Real> vals;
  for (const auto& x : kernel.front()) vals.emplace_back(x, 256);
  CHECK_NOTHROW(phi_level(path, Observable::constant(vals, 0), 5));
}

TEST_CASE("Phi(n) of a coboundary is continuous at every level") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 40);
  Observable phi = Observable::coboundary(t, 0, coeffs({0.0, 1.0, 0.5}));
  for (std::size_t n = 0; n <= 40; n += 8) CHECK(abs(phi_level(path, phi, n).defect) < Real(1e-60, 256));
}

TEST_CASE("chi vanishes for a golden coboundary") {
  Setup s = make(golden(), 64, 1);
  Observable phi = Observable::coboundary(s.path.base(), 0, coeffs({0.0, 1.0, 0.5}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  CHECK(max_abs(sol.chi) < 1e-10);
  CHECK(sol.tail_estimate < 1e-10);
  // Terms decay geometrically.
  for (std::size_t i = 1; i < sol.term_norms.size(); ++i) CHECK(sol.term_norms[i] < sol.term_norms[i - 1]);
}

TEST_CASE("chi recovers the unstable part of piecewise constants") {
  Setup s = make(reversal4(47), 3000, 2);
  const Precision prec = s.est.precision;
  RealVector w = add(scale(s.gamma_u[0], Real(0.7, prec)), scale(s.gamma_u[1], Real(-0.2, prec)));
  RealVector stable = add(scale(s.est.basis[0], Real(1.3, prec)), scale(s.est.basis[1], Real(0.4, prec)));
  for (const RealVector& c : {w, add(w, stable)}) {
    std::vector<Real> vals(c.begin(), c.end());
    for (auto& v : vals) v = Real(v.to_exact(), 256);
    ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, Observable::constant(vals, 0));
    CHECK(norm2(sub(sol.chi, w)).to_double() < 1e-6);
  }
}

TEST_CASE("partial sums telescope to a single quotient solve") {
  Setup s = make(reversal4(41), 3000, 2);
  Observable phi = Observable::global_polynomial(s.path.base(), 0, coeffs({0.1, 0.0, 0.0}));
  phi += Observable::coboundary(s.path.base(), 0, coeffs({0.0, 2.0, -1.0}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  const std::size_t last = sol.levels.back();
  RealVector phi_last = phi_level(s.path, phi, last).phi.entries;
  for (auto& x : phi_last) x.widen(s.est.precision);
  RealVector oracle = project(flat_inverse_apply(s.path, s.est, 0, last, phi_last).w, s.gamma_u);
  CHECK(norm2(sub(sol.chi, oracle)).to_double() < 1e-8);
}

TEST_CASE("series that cannot converge report the term trace") {
  Setup s = make(golden(), 10, 1);
  Observable phi = Observable::coboundary(s.path.base(), 0, coeffs({0.0, 1.0, 0.5}));
  try {
    solve_chi(s.path, s.est, s.gamma_u, phi);
    FAIL("expected a convergence error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Convergence);
    CHECK(std::string(e.what()).find("term norms") != std::string::npos);
  }
}

TEST_CASE("characterization separates the right chi from a perturbed one") {
  Setup s = make(golden(), 64, 1);
  Observable phi = Observable::coboundary(s.path.base(), 0, coeffs({0.0, 1.0, 0.5}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  auto levels = usable_levels(s.path, s.est.horizon);
  CharacterizationReport good = check_chi_characterization(s.path, phi, sol.chi, levels);
  CHECK(good.exponent < 0.1);
  RealVector bad = add(sol.chi, scale(s.gamma_u[0], Real(1e-3, s.est.precision)));
  CharacterizationReport off = check_chi_characterization(s.path, phi, bad, levels);
  CHECK(off.exponent > 0.5);
}

TEST_CASE("psi matches the transfer function up to its orbit mean") {
  Iem t = golden();
  Setup s = make(t, 64, 1);
  const double c0 = 0.0, c1 = 1.0, c2 = 0.5;
  Observable phi = Observable::coboundary(t, 0, coeffs({c0, c1, c2}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  PsiSolution psi = solve_psi(t, phi, sol.chi, default_base_point(t), 20000);
  REQUIRE(psi.samples.size() == 20000);
  CHECK(psi.residual_sup < Real(1e-40, 256));
  double mean = 0;
  for (const auto& p : psi.samples) {
    double x = to_double(p.x);
    mean += c0 + c1 * x + c2 * x * x;
  }
  mean /= 20000;
  double worst = 0;
  for (std::size_t i = 0; i + 1 < psi.samples.size(); ++i) {
    CHECK(psi.samples[i].x < psi.samples[i + 1].x);
  }
  for (const auto& p : psi.samples) {
    double x = to_double(p.x);
    worst = std::max(worst, std::fabs(p.psi.to_double() - (c0 + c1 * x + c2 * x * x - mean)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("delta table") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 40);
  std::vector<PsiSample> flat;
  for (int i = 1; i < 2000; ++i) flat.push_back({Exact(i, 2000) * t.total(), Real(3.0, 256)});
  DeltaTable zero = delta_table(path, flat, 5);
  for (const auto& v : zero.v)
    for (const auto& x : v) CHECK(abs(x) < Real(1e-60, 256));

  std::vector<PsiSample> sparse(flat.begin(), flat.begin() + 50);
  CHECK_THROWS_AS(delta_table(path, sparse, 3, Exact(1, 1000)), Error);

  // Residuals of the recursion shrink along the levels for coboundary data.
  Setup s = make(t, 64, 1);
  Observable phi = Observable::coboundary(t, 0, coeffs({0.0, 1.0, 0.5}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  PsiSolution psi = solve_psi(t, phi, sol.chi, default_base_point(t), 100000);
  DeltaTable dt = delta_table(s.path, psi.samples, 5);
  REQUIRE(dt.recursion_residual.size() == 5);
  CHECK(dt.recursion_residual.back() < dt.recursion_residual.front() / 100);
}

TEST_CASE("chi is stable when the truncation level is extended") {
  Setup s = make(golden(), 128, 1);
  Observable phi = Observable::coboundary(s.path.base(), 0, coeffs({0.0, 1.0, 0.5}));
  phi += Observable::constant({s.gamma_u[0][0], s.gamma_u[0][1]}, 0);
  ChiSolution short_run = solve_chi(s.path, s.est, s.gamma_u, phi);
  ChiOptions longer;
  longer.quiet_terms = 2 * short_run.truncation_level;
  ChiSolution long_run = solve_chi(s.path, s.est, s.gamma_u, phi, longer);
  REQUIRE(long_run.truncation_level >= 2 * short_run.truncation_level);
  CHECK(norm2(sub(short_run.chi, long_run.chi)).to_double() < 1e-6);
  CHECK(norm2(sub(short_run.chi, s.gamma_u[0])).to_double() < 1e-6);
}

TEST_CASE("delta table of a coboundary matches the transfer function") {
  Iem t = golden();
  Setup s = make(t, 64, 1);
  Observable phi = Observable::coboundary(t, 0, coeffs({0.0, 1.0, 0.5}));
  ChiSolution sol = solve_chi(s.path, s.est, s.gamma_u, phi);
  PsiSolution psi = solve_psi(t, phi, sol.chi, default_base_point(t), 50000);
  DeltaTable dt = delta_table(s.path, psi.samples, 6);
  auto psi0 = [](double x) { return x + 0.5 * x * x; };
  for (std::size_t k = 0; k < dt.levels.size(); ++k) {
    const Iem& tn = s.path.level(dt.levels[k]);
    for (Letter a = 0; a < 2; ++a) {
      double left = to_double(tn.u()[static_cast<std::size_t>(tn.pi().top(a) - 1)]);
      double right = left + to_double(tn.length(a));
      CHECK(std::fabs(dt.v[k][a].to_double() - (psi0(right) - psi0(left))) < 1e-3);
    }
  }
}

TEST_CASE("holder fit on synthetic profiles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<double, double>> lip, cusp, flat;
  for (int i = 0; i < 20000; ++i) {
    double x = unif(rng);
    lip.emplace_back(x, x * (1 - x));
    cusp.emplace_back(x, std::sqrt(std::fabs(x - 0.5)));
    flat.emplace_back(x, 2.0);
  }
  HolderFit a = holder_fit(lip);
  CHECK(a.delta_hat >= 0.9);
  CHECK(a.delta_hat <= 1.1);
  HolderFit b = holder_fit(cusp);
  CHECK(b.delta_hat >= 0.45);
  CHECK(b.delta_hat <= 0.55);
  CHECK(holder_fit(flat).flat);
  // Deterministic for a fixed seed when subsampling.
  CHECK(holder_fit(cusp, 1000, 7).delta_hat == holder_fit(cusp, 1000, 7).delta_hat);
}

}
