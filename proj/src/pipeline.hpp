#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "solver.hpp"

namespace iemcoh {

// Throws Connection when the path was cut short by a connection.
void require_no_connection(const RenormalizationPath& path);

struct SolveOptions {
  double tolerance = 1e-8;
  std::size_t samples = 10000;
  std::optional<Exact> base_x;  // default_base_point when empty
  std::size_t delta_levels = 8;
  std::size_t pair_budget = 200000;
  std::uint64_t seed = 0;
};

struct SolveRun {
  StableSpaceEstimate est;
  ChiSolution chi;
  CharacterizationReport characterization;
  PsiSolution psi;
  std::optional<DeltaTable> delta;
  std::optional<HolderFit> holder;
  std::vector<std::string> warnings;
  bool residual_ok = false;  // telescoping residual below tolerance
};

// The whole constructive pipeline: stable space, chi, psi on one orbit, and
// the V(k) and Hölder diagnostics. Coverage problems in the diagnostics are
// reported as warnings; everything else propagates.
SolveRun run_solver(const RenormalizationPath& path, const Observable& phi, const SolveOptions& opts);

}  // namespace iemcoh
