#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cocycle_algebra.hpp"
#include "observables.hpp"

namespace iemcoh {

struct PhiLevel {
  GammaVector phi;  // Phi(n)
  Real defect;      // right-end value of S(0,n)phi - Phi(n); vanishes for valid data
};

// Constants Phi(n) making S(0,n)phi - Phi(n) continuous on I(n) and zero at
// u_0. Throws BoundaryCondition if d phi != 0 or the right-end defect exceeds
// `tolerance` (both relative to the size of the data).
PhiLevel phi_level(const RenormalizationPath& path, const Observable& phi, std::size_t n, double tolerance = 1e-8);

struct ChiSolution {
  RealVector chi;                  // in the chosen complement at level 0
  std::vector<std::size_t> levels; // n_l used, l = 1..L
  std::vector<double> term_norms;  // ||B_flat^{-1}(0,n_l) Lambda_l||
  std::size_t truncation_level = 0;
  double tail_estimate = 0;
  double max_condition = 0;
};

struct ChiOptions {
  double tolerance = 1e-8;
  // Consecutive small terms required to stop.
  std::size_t quiet_terms = 3;
};

// Levels n_k at which pushed-forward stable data is still trustworthy:
// n_k <= horizon and log||B(0,n_k)|| <= log||B(0,horizon)|| / 2.
std::vector<std::size_t> usable_levels(const RenormalizationPath& path, std::size_t horizon);

ChiSolution solve_chi(const RenormalizationPath& path, const StableSpaceEstimate& est,
                      const std::vector<RealVector>& gamma_u, const Observable& phi, const ChiOptions& opts = {});

struct CharacterizationReport {
  std::vector<std::size_t> levels;
  std::vector<double> sup_norms;   // ||S(0,n_k)(phi - chi)||_C0
  std::vector<double> log_norm_b;  // log ||B(0,n_k)||
  double exponent = 0;             // fitted growth exponent
  std::vector<double> tau_grid;
  std::vector<double> tau_ratio;   // max_k sup_norm / ||B||^tau
};

// Sup norms of special Birkhoff sums of phi - chi over the given levels.
CharacterizationReport check_chi_characterization(const RenormalizationPath& path, const Observable& phi,
                                                  const RealVector& chi, const std::vector<std::size_t>& levels,
                                                  const std::vector<double>& tau_grid = {0.05, 0.1, 0.25, 0.5});

struct PsiSample {
  Exact x;
  Real psi;
};

struct PsiSolution {
  std::vector<PsiSample> samples;  // sorted by x
  Real mean_shift;                 // subtracted from the raw telescoped values
  Real residual_sup;               // telescoping residual along the orbit
  std::vector<std::string> warnings;
};

// Default base point u_0 + |I| (sqrt 2 - 1).
Exact default_base_point(const Iem& t);

PsiSolution solve_psi(const Iem& t, const Observable& phi, const RealVector& chi, const Exact& base_x, std::size_t n);

struct DeltaTable {
  std::vector<std::size_t> levels;      // n_k
  std::vector<std::vector<Real>> v;     // V(k) indexed by letter
  std::vector<double> recursion_residual;  // ||V(k+1) - (B^T(n_k,n_{k+1}))^{-1} V(k)||, k >= 0
};

// psi at endpoints by linear interpolation between the bracketing samples;
// Coverage error when the bracket is wider than max_gap (default 16|I|/N).
DeltaTable delta_table(const RenormalizationPath& path, const std::vector<PsiSample>& samples, std::size_t k_max,
                       std::optional<Exact> max_gap = std::nullopt);

struct HolderBin {
  double distance = 0;  // nominal dyadic scale; pairs lie within a factor 2 of it
  double max_diff = 0;
  std::size_t pairs = 0;
};

struct HolderFit {
  double delta_hat = 0;
  double fit_quality = 0;
  bool flat = false;
  std::vector<HolderBin> bins;
};

HolderFit holder_fit(const std::vector<std::pair<double, double>>& samples, std::size_t pair_budget = 200000,
                     std::uint64_t seed = 0);
std::vector<std::pair<double, double>> to_doubles(const std::vector<PsiSample>& samples);

}  // namespace iemcoh
