#include "iemcoh/iemcoh.h"

#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "serialization.hpp"

struct iemcoh_iem {
  iemcoh::Iem value;
};
struct iemcoh_path {
  iemcoh::RenormalizationPath value;
};
struct iemcoh_observable {
  iemcoh::Observable value;
};

namespace {

thread_local std::string last_error;

iemcoh_status status_of(iemcoh::ErrorKind k) {
  using iemcoh::ErrorKind;
  switch (k) {
    case ErrorKind::MalformedData: return IEMCOH_ERR_INPUT;
    case ErrorKind::Convergence:
    case ErrorKind::QuotientSolve: return IEMCOH_ERR_CONVERGENCE;
    case ErrorKind::BoundaryCondition: return IEMCOH_ERR_BOUNDARY;
    case ErrorKind::Connection: return IEMCOH_ERR_CONNECTION;
    case ErrorKind::PrecisionExhausted: return IEMCOH_ERR_PRECISION;
    case ErrorKind::SingularPoint: return IEMCOH_ERR_SINGULAR;
    case ErrorKind::Coverage: return IEMCOH_ERR_COVERAGE;
    case ErrorKind::Domain:
    case ErrorKind::OutOfRange: return IEMCOH_ERR_DOMAIN;
    case ErrorKind::InvariantViolation: return IEMCOH_ERR_INTERNAL;
  }
  return IEMCOH_ERR_INTERNAL;
}

template <typename F>
iemcoh_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return IEMCOH_OK;
  } catch (const iemcoh::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return IEMCOH_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IEMCOH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IEMCOH_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) iemcoh::fail(iemcoh::ErrorKind::Domain, std::string(what) + " is null");
}

std::string dump(const iemcoh::Json& j) { return j.dump(2) + "\n"; }

iemcoh::Exact parse_point(const char* s, const iemcoh::Iem& t) {
  require(s, "point");
  return iemcoh::parse_rounded(s, t.precision());
}

}  // namespace

extern "C" {

const char* iemcoh_version(void) { return "0.1.0"; }

const char* iemcoh_last_error(void) { return last_error.c_str(); }

void iemcoh_string_free(char* s) { delete[] s; }

void iemcoh_default_solve_options(iemcoh_solve_options* opts) {
  if (!opts) return;
  iemcoh::SolveOptions d;
  opts->tolerance = d.tolerance;
  opts->samples = d.samples;
  opts->delta_levels = d.delta_levels;
  opts->pair_budget = d.pair_budget;
  opts->seed = d.seed;
}

void iemcoh_default_thresholds(iemcoh_thresholds* th) {
  if (!th) return;
  iemcoh::Thresholds d;
  th->tau = d.tau;
  th->theta = d.theta;
  th->gap = d.gap;
}

iemcoh_status iemcoh_iem_from_json(const char* json, long precision_bits, iemcoh_iem** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    if (precision_bits < 0 || (precision_bits > 0 && precision_bits < 64)) {
      iemcoh::fail(iemcoh::ErrorKind::MalformedData, "precision must be at least 64 bits");
    }
    std::optional<iemcoh::Precision> prec;
    if (precision_bits > 0) prec = precision_bits;
    *out = new iemcoh_iem{iemcoh::iem_from_json(iemcoh::Json::parse(json), prec)};
  });
}

void iemcoh_iem_free(iemcoh_iem* t) { delete t; }

size_t iemcoh_iem_size(const iemcoh_iem* t) { return t ? t->value.size() : 0; }

iemcoh_status iemcoh_describe(const iemcoh_iem* t, char** out_json) {
  return guarded([&] {
    require(t, "iem");
    require(out_json, "out");
    *out_json = dup(dump(iemcoh::describe_json(t->value.pi())));
  });
}

iemcoh_status iemcoh_check_connection(const iemcoh_iem* t, size_t depth) {
  return guarded([&] {
    require(t, "iem");
    if (auto c = iemcoh::find_connection(t->value, depth, t->value.tolerance())) {
      iemcoh::fail(iemcoh::ErrorKind::Connection, "connection detected at step " + std::to_string(c->m));
    }
  });
}

iemcoh_status iemcoh_path_new(const iemcoh_iem* t, size_t max_steps, iemcoh_path** out) {
  return guarded([&] {
    require(t, "iem");
    require(out, "out");
    *out = new iemcoh_path{iemcoh::iterate(t->value, max_steps)};
  });
}

void iemcoh_path_free(iemcoh_path* p) { delete p; }

size_t iemcoh_path_length(const iemcoh_path* p) { return p ? p->value.length() : 0; }

iemcoh_status iemcoh_path_json(const iemcoh_path* p, char** out_json) {
  return guarded([&] {
    require(p, "path");
    require(out_json, "out");
    *out_json = dup(dump(iemcoh::path_json(p->value)));
  });
}

iemcoh_status iemcoh_path_require_complete(const iemcoh_path* p) {
  return guarded([&] {
    require(p, "path");
    iemcoh::require_no_connection(p->value);
  });
}

iemcoh_status iemcoh_diagnose(const iemcoh_path* p, const iemcoh_thresholds* th, char** out_json) {
  return guarded([&] {
    require(p, "path");
    require(out_json, "out");
    iemcoh::require_no_connection(p->value);
    iemcoh::Thresholds t;
    if (th) t = {th->tau, th->theta, th->gap};
    const auto& path = p->value;
    auto est = iemcoh::stable_space(path, path.length(), iemcoh::genus_and_marks(path.base().pi()).g, t.gap);
    *out_json = dup(dump(iemcoh::roth_json(iemcoh::diagnose(path, est, t))));
  });
}

iemcoh_status iemcoh_observable_from_json(const iemcoh_iem* t, const char* json, iemcoh_observable** out) {
  return guarded([&] {
    require(t, "iem");
    require(json, "json");
    require(out, "out");
    *out = new iemcoh_observable{iemcoh::observable_from_json(iemcoh::Json::parse(json), t->value)};
  });
}

void iemcoh_observable_free(iemcoh_observable* phi) { delete phi; }

iemcoh_status iemcoh_solve(const iemcoh_path* p, const iemcoh_observable* phi, const iemcoh_solve_options* opts,
                           char** out_json, char** out_csv) {
  return guarded([&] {
    require(p, "path");
    require(phi, "observable");
    require(out_json, "out");
    iemcoh::SolveOptions so;
    if (opts) {
      so.tolerance = opts->tolerance;
      so.samples = opts->samples;
      so.delta_levels = opts->delta_levels;
      so.pair_budget = opts->pair_budget;
      so.seed = opts->seed;
    }
    iemcoh::SolveRun run = iemcoh::run_solver(p->value, phi->value, so);
    *out_json = dup(dump(iemcoh::solve_json(run, p->value.base().pi())));
    if (out_csv) *out_csv = dup(iemcoh::psi_csv(run.psi));
    if (!run.residual_ok) {
      iemcoh::fail(iemcoh::ErrorKind::Convergence, "telescoping residual " + run.psi.residual_sup.to_string(3) +
                                                       " exceeds the tolerance");
    }
  });
}

iemcoh_status iemcoh_decompose_time(const iemcoh_path* p, const char* x, size_t n, char** out_json) {
  return guarded([&] {
    require(p, "path");
    require(out_json, "out");
    const auto& path = p->value;
    *out_json = dup(dump(iemcoh::time_json(iemcoh::time_decompose(path, parse_point(x, path.base()), n))));
  });
}

iemcoh_status iemcoh_decompose_space(const iemcoh_path* p, const char* x_minus, const char* x_plus, char** out_json) {
  return guarded([&] {
    require(p, "path");
    require(out_json, "out");
    const auto& path = p->value;
    auto sd = iemcoh::space_decompose(path, parse_point(x_minus, path.base()), parse_point(x_plus, path.base()));
    *out_json = dup(dump(iemcoh::space_json(sd)));
  });
}

iemcoh_status iemcoh_holder(const char* csv, size_t pair_budget, uint64_t seed, char** out_json) {
  return guarded([&] {
    require(csv, "csv");
    require(out_json, "out");
    *out_json = dup(dump(iemcoh::holder_json(iemcoh::holder_fit(iemcoh::parse_psi_csv(csv), pair_budget, seed))));
  });
}

}  // extern "C"
