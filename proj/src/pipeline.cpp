#include "pipeline.hpp"

#include "error.hpp"

namespace iemcoh {

void require_no_connection(const RenormalizationPath& path) {
  if (path.stop_reason() == StopReason::Connection) {
    fail(ErrorKind::Connection, "connection detected at step " + std::to_string(path.connection_step().value_or(0)));
  }
}

SolveRun run_solver(const RenormalizationPath& path, const Observable& phi, const SolveOptions& opts) {
  require_no_connection(path);
  const Iem& t = path.base();
  SolveRun run;
  run.est = stable_space(path, path.length(), genus_and_marks(t.pi()).g);
  if (run.est.degenerate) run.warnings.push_back(run.est.warning);
  const auto gamma_u = unstable_complement(run.est, t.pi());
  ChiOptions co;
  co.tolerance = opts.tolerance;
  run.chi = solve_chi(path, run.est, gamma_u, phi, co);
  run.characterization = check_chi_characterization(path, phi, run.chi.chi, usable_levels(path, run.est.horizon));
  run.psi = solve_psi(t, phi, run.chi.chi, opts.base_x ? *opts.base_x : default_base_point(t), opts.samples);
  for (const auto& w : run.psi.warnings) run.warnings.push_back(w);
  run.residual_ok = run.psi.residual_sup.to_double() < opts.tolerance;
  try {
    run.delta = delta_table(path, run.psi.samples, opts.delta_levels);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Coverage) throw;
    run.warnings.push_back(e.what());
  }
  try {
    run.holder = holder_fit(to_doubles(run.psi.samples), opts.pair_budget, opts.seed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain) throw;
    run.warnings.push_back(e.what());
  }
  return run;
}

}  // namespace iemcoh
