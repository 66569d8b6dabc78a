#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exchange.hpp"
#include "int_matrix.hpp"

namespace iemcoh {

enum class StepType { Top, Bottom };

const char* to_string(StepType t);

struct StepRecord {
  std::size_t index = 0;
  StepType type = StepType::Top;
  Letter winner = 0;
  Letter loser = 0;
  // Length of the winner before the step; the loser's new piece reads the
  // winner's old piece shifted by winner_length - loser_length.
  Exact winner_length;
  IntMatrix elementary;  // B(n, n+1) = 1 + E_{loser, winner}
};

// One elementary step: first return of T to (u_0, max(u_{d-1}, v_{d-1})).
// Top step (u_{d-1} > v_{d-1}): the bottom-last letter wins and the loser is
// moved in the top row right after it; bottom step symmetric.
std::pair<Iem, StepRecord> rv_step(const Iem& t, std::size_t index = 0);

enum class StopReason { MaxSteps, Precision, Connection };

const char* to_string(StopReason r);

class RenormalizationPath {
 public:
  RenormalizationPath(const Iem& base, std::size_t max_steps);

  const Iem& base() const { return levels_.front(); }
  std::size_t length() const { return steps_.size(); }
  const Iem& level(std::size_t n) const;
  const std::vector<StepRecord>& steps() const { return steps_; }
  // Positivity times n_0 = 0 < n_1 < ...
  const std::vector<std::size_t>& nk() const { return nk_; }
  StopReason stop_reason() const { return stop_; }
  // Step at which a connection truncated the path.
  std::optional<std::size_t> connection_step() const { return connection_step_; }

  // B(m, n) for 0 <= m <= n <= length(); cached for m = 0.
  IntMatrix b_matrix(std::size_t m, std::size_t n) const;
  const IntMatrix& b_from_origin(std::size_t n) const;

 private:
  std::vector<Iem> levels_;
  std::vector<StepRecord> steps_;
  std::vector<IntMatrix> b0_;
  std::vector<std::size_t> nk_;
  StopReason stop_ = StopReason::MaxSteps;
  std::optional<std::size_t> connection_step_;
};

RenormalizationPath iterate(const Iem& t, std::size_t max_steps);

struct BalanceReport {
  Exact min_len;
  Exact max_len;
  Integer norm_b;
  // |I(0)| - min_len ||B(0,n)|| and d max_len ||B(0,n)|| - |I(0)|; both >= 0.
  Exact lower_slack;
  Exact upper_slack;
};

BalanceReport balance_report(const RenormalizationPath& path, std::size_t n);

}  // namespace iemcoh
