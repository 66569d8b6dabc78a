#pragma once

#include <string>
#include <vector>

#include "cocycle_algebra.hpp"

namespace iemcoh {

enum class Verdict { Pass, Warn, InsufficientHorizon };
std::string to_string(Verdict v);

struct Thresholds {
  double tau = 0.25;    // pass if tau_hat < tau (also used for condition (c) exponents)
  double theta = 0.05;  // pass if theta_hat > theta
  double gap = 1e3;     // pass if gap_ratio > gap
};

struct ConditionA {
  std::vector<std::size_t> levels;  // n_k, k >= 1, with n_{k+1} on the path
  std::vector<double> ratios;       // log||B(n_k,n_{k+1})|| / log||B(0,n_k)||
  std::size_t window_start = 0;     // first index of the tail window
  double tau_hat = 0;               // max of the ratios over the tail half
  Verdict verdict = Verdict::InsufficientHorizon;
};

// Needs at least four positivity times (n_0 included).
ConditionA condition_a(const RenormalizationPath& path, const Thresholds& th = {});

struct ConditionB {
  std::vector<std::size_t> levels;
  std::vector<double> log_full;        // log||B(0,n)||, sup norm
  std::vector<double> log_restricted;  // log of the sup-norm operator norm on sum lambda_a chi_a = 0
  double slope = 0;
  double theta_hat = 0;  // 1 - slope
  Verdict verdict = Verdict::InsufficientHorizon;
};

// Exact operator norm (sup norm) of m restricted to {chi : sum w_a chi_a = 0},
// by enumerating the vertices of the unit cube cut by the hyperplane.
Exact restricted_norm(const IntMatrix& m, const ExactVector& w);

ConditionB condition_b(const RenormalizationPath& path, const Thresholds& th = {});

struct ConditionC {
  std::vector<std::size_t> levels;          // n on the grid (usable levels and 0)
  std::vector<double> log_full;             // log||B(0,n)||
  std::vector<double> log_stable;           // max_m log||B(m,n) on the stable space at m||
  std::vector<double> log_flat_inverse;     // max_m log||B_flat^{-1}(m,n)||
  double stable_exponent = 0;
  double flat_inverse_exponent = 0;
  bool joint_consistent = true;  // stable part passing implies the quotient part passes
  std::vector<std::string> warnings;
  Verdict verdict = Verdict::InsufficientHorizon;
};

ConditionC condition_c(const RenormalizationPath& path, const StableSpaceEstimate& est, const Thresholds& th = {});

struct ConditionD {
  int genus = 0;
  std::size_t stable_dim = 0;
  std::size_t ker_omega_dim = 0;
  double gap_ratio = 0;
  RealVector singular_values;
  Verdict verdict = Verdict::Warn;
};

ConditionD condition_d(const StableSpaceEstimate& est, const CombinatorialData& pi, const Thresholds& th = {});

struct RothReport {
  std::size_t horizon = 0;
  ConditionA a;
  ConditionB b;
  ConditionC c;
  ConditionD d;
  double sigma_hat = 0;
};

RothReport diagnose(const RenormalizationPath& path, const StableSpaceEstimate& est, const Thresholds& th = {});

}  // namespace iemcoh
