#include "exchange.hpp"

#include <algorithm>

#include "error.hpp"

namespace iemcoh {

namespace {

Exact abs_exact(const Exact& x) { return x < 0 ? Exact(-x) : x; }

// Index i with edges[i-1] < x < edges[i], both gaps wider than tol.
std::size_t locate(const std::vector<Exact>& edges, const Exact& x, const Exact& tol, const char* what) {
  if (x <= edges.front() - tol || x >= edges.back() + tol) {
    fail(ErrorKind::Domain, std::string(what) + " point " + exact_to_string(x, 20) + " lies outside the interval");
  }
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t i = static_cast<std::size_t>(it - edges.begin());
  if (i == 0) i = 1;
  if (i >= edges.size()) i = edges.size() - 1;
  if (abs_exact(x - edges[i - 1]) <= tol || abs_exact(edges[i] - x) <= tol) {
    fail(ErrorKind::SingularPoint, std::string(what) + " point " + exact_to_string(x, 20) + " is within tolerance of a singularity");
  }
  return i;
}

}  // namespace

Iem::Iem(CombinatorialData pi, std::vector<Exact> lengths, Exact left, Precision precision)
    : pi_(std::move(pi)), lengths_(std::move(lengths)), left_(std::move(left)), precision_(precision) {
  if (precision_ < 16) fail(ErrorKind::MalformedData, "precision_bits must be at least 16");
  if (lengths_.size() != pi_.size()) fail(ErrorKind::MalformedData, "one length per letter is required");
  total_ = 0;
  for (std::size_t a = 0; a < lengths_.size(); ++a) {
    if (lengths_[a] <= 0) fail(ErrorKind::MalformedData, "length of '" + pi_.label(a) + "' must be positive");
    total_ += lengths_[a];
  }
  tolerance_ = pow2(-static_cast<long>(precision_ / 2));
  const std::size_t d = size();
  u_.assign(d + 1, left_);
  v_.assign(d + 1, left_);
  for (std::size_t i = 1; i <= d; ++i) {
    u_[i] = u_[i - 1] + lengths_[pi_.top_letter(static_cast<int>(i))];
    v_[i] = v_[i - 1] + lengths_[pi_.bottom_letter(static_cast<int>(i))];
  }
}

Iem Iem::from_decimal(CombinatorialData pi, const std::vector<std::string>& lengths, Precision precision) {
  std::vector<Exact> exact;
  exact.reserve(lengths.size());
  for (const auto& s : lengths) exact.push_back(parse_rounded(s, precision));
  return Iem(std::move(pi), std::move(exact), 0, precision);
}

Exact Iem::offset(Letter a) const {
  return v_[static_cast<std::size_t>(pi_.bottom(a) - 1)] - u_[static_cast<std::size_t>(pi_.top(a) - 1)];
}

Letter Iem::top_letter_at(const Exact& x) const {
  return pi_.top_letter(static_cast<int>(locate(u_, x, tolerance_, "evaluation")));
}

Letter Iem::bottom_letter_at(const Exact& x) const {
  return pi_.bottom_letter(static_cast<int>(locate(v_, x, tolerance_, "inverse evaluation")));
}

Singularities singularities(const Iem& t) { return {t.u(), t.v()}; }

Exact evaluate(const Iem& t, const Exact& x) { return x + t.offset(t.top_letter_at(x)); }

Exact evaluate_inverse(const Iem& t, const Exact& y) { return y - t.offset(t.bottom_letter_at(y)); }

std::optional<Connection> find_connection(const Iem& t, std::size_t max_steps, const Exact& tolerance) {
  const std::size_t d = t.size();
  const auto& u = t.u();
  std::vector<Exact> orbit(t.v().begin() + 1, t.v().begin() + static_cast<long>(d));
  for (std::size_t m = 0; m <= max_steps; ++m) {
    for (std::size_t j = 1; j < d; ++j) {
      const Exact& p = orbit[j - 1];
      // Nearest u_i by binary search.
      auto it = std::lower_bound(u.begin(), u.end(), p);
      for (auto cand : {it, it == u.begin() ? it : it - 1}) {
        if (cand == u.end()) continue;
        if (abs_exact(*cand - p) < tolerance) return Connection{j, static_cast<std::size_t>(cand - u.begin()), m};
      }
    }
    if (m == max_steps) break;
    for (auto& p : orbit) p += t.offset(t.top_letter_at(p));
  }
  return std::nullopt;
}

SuspensionPolygon suspension_polygon(const Iem& t) {
  const std::size_t d = t.size();
  const auto& pi = t.pi();
  SuspensionPolygon poly;
  poly.upper.push_back({t.left(), 0});
  poly.lower.push_back({t.left(), 0});
  for (std::size_t i = 1; i <= d; ++i) {
    Letter a = pi.top_letter(static_cast<int>(i));
    Letter b = pi.bottom_letter(static_cast<int>(i));
    const auto& pu = poly.upper.back();
    const auto& pv = poly.lower.back();
    poly.upper.push_back({pu.re + t.length(a), pu.im + (pi.bottom(a) - pi.top(a))});
    poly.lower.push_back({pv.re + t.length(b), pv.im + (pi.bottom(b) - pi.top(b))});
  }
  return poly;
}

}  // namespace iemcoh
