#include "renormalization.hpp"

#include <algorithm>

#include "error.hpp"

namespace iemcoh {

const char* to_string(StepType t) { return t == StepType::Top ? "top" : "bottom"; }

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxSteps: return "max_steps";
    case StopReason::Precision: return "precision";
    case StopReason::Connection: return "connection";
  }
  return "unknown";
}

namespace {
const Exact kConnectionHeadroom(Integer(1) << 32);
}  // namespace

std::pair<Iem, StepRecord> rv_step(const Iem& t, std::size_t index) {
  const std::size_t d = t.size();
  const auto& pi = t.pi();
  const Letter alpha_t = pi.top_letter(static_cast<int>(d));
  const Letter alpha_b = pi.bottom_letter(static_cast<int>(d));
  const Exact diff = t.u()[d - 1] - t.v()[d - 1];
  if ((diff < 0 ? Exact(-diff) : diff) <= t.tolerance()) {
    // A coincidence is only meaningful while |I(n)| keeps enough bits above
    // the resolution; near it, chance agreement is likely and we are simply
    // out of precision.
    const Exact width = t.u()[d] - t.u()[0];
    if (width < t.tolerance() * kConnectionHeadroom) {
      fail(ErrorKind::PrecisionExhausted, "discrepancy below resolution at step " + std::to_string(index));
    }
    fail(ErrorKind::Connection, "connection detected at step " + std::to_string(index));
  }
  StepRecord rec;
  rec.index = index;
  rec.type = diff > 0 ? StepType::Top : StepType::Bottom;
  rec.winner = rec.type == StepType::Top ? alpha_b : alpha_t;
  rec.loser = rec.type == StepType::Top ? alpha_t : alpha_b;
  rec.winner_length = t.length(rec.winner);

  std::vector<Exact> lengths = t.lengths();
  lengths[rec.winner] -= lengths[rec.loser];
  if (lengths[rec.winner] <= t.tolerance()) {
    fail(ErrorKind::PrecisionExhausted, "interval below resolution at step " + std::to_string(index));
  }

  auto move_after_winner = [&](std::vector<Letter> order) {
    order.pop_back();  // the loser is last in its own row
    auto it = std::find(order.begin(), order.end(), rec.winner);
    order.insert(it + 1, rec.loser);
    return order;
  };
  std::vector<Letter> top = pi.top_order();
  std::vector<Letter> bottom = pi.bottom_order();
  if (rec.type == StepType::Top) top = move_after_winner(std::move(top));
  else bottom = move_after_winner(std::move(bottom));

  rec.elementary = IntMatrix::identity(d);
  rec.elementary(rec.loser, rec.winner) = 1;
  Iem next(reorder_unchecked(pi, std::move(top), std::move(bottom)), std::move(lengths), t.left(), t.precision());
  return {std::move(next), std::move(rec)};
}

RenormalizationPath::RenormalizationPath(const Iem& base, std::size_t max_steps) {
  levels_.push_back(base);
  b0_.push_back(IntMatrix::identity(base.size()));
  nk_.push_back(0);
  IntMatrix since_last = IntMatrix::identity(base.size());
  while (steps_.size() < max_steps) {
    const Iem& cur = levels_.back();
    Exact shortest = *std::min_element(cur.lengths().begin(), cur.lengths().end());
    if (shortest < cur.tolerance()) {
      stop_ = StopReason::Precision;
      return;
    }
    try {
      auto [next, rec] = rv_step(cur, steps_.size());
      IntMatrix b = b0_.back();
      b.add_row(rec.loser, rec.winner);
      since_last.add_row(rec.loser, rec.winner);
      b0_.push_back(std::move(b));
      steps_.push_back(std::move(rec));
      levels_.push_back(std::move(next));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Connection) {
        stop_ = StopReason::Connection;
        connection_step_ = steps_.size();
        return;
      }
      if (e.kind() == ErrorKind::PrecisionExhausted) {
        stop_ = StopReason::Precision;
        return;
      }
      throw;
    }
    if (since_last.all_positive()) {
      nk_.push_back(steps_.size());
      since_last = IntMatrix::identity(base.size());
    }
  }
}

const Iem& RenormalizationPath::level(std::size_t n) const {
  if (n >= levels_.size()) fail(ErrorKind::OutOfRange, "level " + std::to_string(n) + " beyond path length");
  return levels_[n];
}

const IntMatrix& RenormalizationPath::b_from_origin(std::size_t n) const {
  if (n >= b0_.size()) fail(ErrorKind::OutOfRange, "step " + std::to_string(n) + " beyond path length");
  return b0_[n];
}

IntMatrix RenormalizationPath::b_matrix(std::size_t m, std::size_t n) const {
  if (m > n || n > steps_.size()) {
    fail(ErrorKind::OutOfRange, "b_matrix indices (" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
  }
  if (m == 0) return b0_[n];
  IntMatrix b = IntMatrix::identity(base().size());
  for (std::size_t i = m; i < n; ++i) b.add_row(steps_[i].loser, steps_[i].winner);
  return b;
}

RenormalizationPath iterate(const Iem& t, std::size_t max_steps) { return RenormalizationPath(t, max_steps); }

BalanceReport balance_report(const RenormalizationPath& path, std::size_t n) {
  const Iem& tn = path.level(n);
  BalanceReport r;
  r.min_len = *std::min_element(tn.lengths().begin(), tn.lengths().end());
  r.max_len = *std::max_element(tn.lengths().begin(), tn.lengths().end());
  r.norm_b = path.b_from_origin(n).norm();
  const Exact total = path.base().total();
  r.lower_slack = total - r.min_len * Exact(r.norm_b);
  r.upper_slack = Exact(static_cast<long>(tn.size())) * r.max_len * Exact(r.norm_b) - total;
  return r;
}

}  // namespace iemcoh
