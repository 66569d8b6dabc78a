#include "combinatorics.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace iemcoh {

namespace {

void check_bijection(const std::vector<int>& m, const char* which) {
  const int d = static_cast<int>(m.size());
  std::vector<bool> seen(m.size(), false);
  for (int p : m) {
    if (p < 1 || p > d || seen[static_cast<std::size_t>(p - 1)]) {
      fail(ErrorKind::MalformedData, std::string(which) + " is not a bijection onto {1..d}");
    }
    seen[static_cast<std::size_t>(p - 1)] = true;
  }
}

}  // namespace

std::optional<int> reducible_at(const std::vector<int>& top, const std::vector<int>& bottom) {
  if (top.size() != bottom.size()) fail(ErrorKind::MalformedData, "top and bottom sizes differ");
  check_bijection(top, "pi_top");
  check_bijection(bottom, "pi_bottom");
  const int d = static_cast<int>(top.size());
  // The first k letters agree as sets iff max bottom position among the
  // first k top letters equals k.
  std::vector<int> bottom_of_top_pos(top.size());
  for (std::size_t a = 0; a < top.size(); ++a) bottom_of_top_pos[static_cast<std::size_t>(top[a] - 1)] = bottom[a];
  int running = 0;
  for (int k = 1; k < d; ++k) {
    running = std::max(running, bottom_of_top_pos[static_cast<std::size_t>(k - 1)]);
    if (running == k) return k;
  }
  return std::nullopt;
}

bool validate_irreducible(const std::vector<int>& top, const std::vector<int>& bottom) {
  return !reducible_at(top, bottom).has_value();
}

CombinatorialData::CombinatorialData(std::vector<std::string> alphabet, std::vector<int> top,
                                     std::vector<int> bottom)
    : alphabet_(std::move(alphabet)), top_(std::move(top)), bottom_(std::move(bottom)) {
  if (alphabet_.size() < 2) fail(ErrorKind::MalformedData, "alphabet needs at least two letters");
  if (top_.size() != alphabet_.size() || bottom_.size() != alphabet_.size()) {
    fail(ErrorKind::MalformedData, "pi_top/pi_bottom must assign every letter");
  }
  std::set<std::string> labels(alphabet_.begin(), alphabet_.end());
  if (labels.size() != alphabet_.size()) fail(ErrorKind::MalformedData, "duplicate alphabet label");
  if (auto k = reducible_at(top_, bottom_)) {
    fail(ErrorKind::MalformedData, "reducible at k=" + std::to_string(*k));
  }
  build_orders();
}

CombinatorialData CombinatorialData::from_orders(const std::vector<std::string>& alphabet,
                                                 const std::vector<std::string>& top_order,
                                                 const std::vector<std::string>& bottom_order) {
  auto positions = [&](const std::vector<std::string>& order) {
    if (order.size() != alphabet.size()) fail(ErrorKind::MalformedData, "order length mismatch");
    std::vector<int> pos(alphabet.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto it = std::find(alphabet.begin(), alphabet.end(), order[i]);
      if (it == alphabet.end()) fail(ErrorKind::MalformedData, "unknown letter '" + order[i] + "'");
      pos[static_cast<std::size_t>(it - alphabet.begin())] = static_cast<int>(i + 1);
    }
    return pos;
  };
  return CombinatorialData(alphabet, positions(top_order), positions(bottom_order));
}

void CombinatorialData::build_orders() {
  top_order_.assign(size(), 0);
  bottom_order_.assign(size(), 0);
  for (Letter a = 0; a < size(); ++a) {
    top_order_[static_cast<std::size_t>(top_[a] - 1)] = a;
    bottom_order_[static_cast<std::size_t>(bottom_[a] - 1)] = a;
  }
}

std::optional<Letter> CombinatorialData::find(const std::string& label) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Letter>(it - alphabet_.begin());
}

CombinatorialData reorder_unchecked(const CombinatorialData& base, std::vector<Letter> top_order,
                                    std::vector<Letter> bottom_order) {
  CombinatorialData out;
  out.alphabet_ = base.alphabet_;
  out.top_order_ = std::move(top_order);
  out.bottom_order_ = std::move(bottom_order);
  out.top_.assign(out.alphabet_.size(), 0);
  out.bottom_.assign(out.alphabet_.size(), 0);
  for (std::size_t i = 0; i < out.alphabet_.size(); ++i) {
    out.top_[out.top_order_[i]] = static_cast<int>(i + 1);
    out.bottom_[out.bottom_order_[i]] = static_cast<int>(i + 1);
  }
  return out;
}

IntMatrix omega_matrix(const CombinatorialData& pi) {
  const std::size_t d = pi.size();
  IntMatrix om(d, d);
  for (Letter a = 0; a < d; ++a) {
    for (Letter b = 0; b < d; ++b) {
      if (pi.top(a) < pi.top(b) && pi.bottom(a) > pi.bottom(b)) om(a, b) = 1;
      else if (pi.top(a) > pi.top(b) && pi.bottom(a) < pi.bottom(b)) om(a, b) = -1;
    }
  }
  return om;
}

std::size_t VertexPermutation::u_count(std::size_t cycle) const {
  const auto& c = cycles[cycle];
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [&](std::size_t id) { return is_u(id); }));
}

std::string VertexPermutation::name(std::size_t id) const {
  if (id <= d) return "U" + std::to_string(id);
  return "V" + std::to_string(id - d);
}

VertexPermutation vertex_permutation(const CombinatorialData& pi) {
  VertexPermutation vp;
  const std::size_t d = pi.size();
  vp.d = d;
  vp.map.assign(2 * d, 2 * d);
  // U_i -> V_j where the letter at top position i+1 sits at bottom position j+1.
  for (std::size_t i = 0; i < d; ++i) {
    Letter a = pi.top_letter(static_cast<int>(i + 1));
    vp.map[vp.u(i)] = vp.v(static_cast<std::size_t>(pi.bottom(a) - 1));
  }
  // V_j' -> U_i' where the letter at bottom position j' sits at top position i'.
  for (std::size_t j = 1; j <= d; ++j) {
    Letter a = pi.bottom_letter(static_cast<int>(j));
    vp.map[vp.v(j)] = vp.u(static_cast<std::size_t>(pi.top(a)));
  }
  std::vector<bool> seen(2 * d, false);
  for (std::size_t id : vp.map) {
    if (id >= 2 * d || seen[id]) fail(ErrorKind::InvariantViolation, "vertex map is not a permutation");
    seen[id] = true;
  }
  std::fill(seen.begin(), seen.end(), false);
  vp.cycle_of_u.assign(d + 1, 0);
  for (std::size_t start = 0; start < 2 * d; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t id = start; !seen[id]; id = vp.map[id]) {
      seen[id] = true;
      cycle.push_back(id);
      if (vp.is_u(id)) vp.cycle_of_u[id] = vp.cycles.size();
    }
    vp.cycles.push_back(std::move(cycle));
  }
  return vp;
}

GenusMarks genus_and_marks(const CombinatorialData& pi) {
  const std::size_t rank = omega_matrix(pi).rank();
  if (rank % 2 != 0) fail(ErrorKind::InvariantViolation, "rank of Omega is odd");
  GenusMarks gm;
  gm.g = static_cast<int>(rank / 2);
  gm.s = static_cast<int>(vertex_permutation(pi).cycles.size());
  if (static_cast<int>(pi.size()) != 2 * gm.g + gm.s - 1) {
    fail(ErrorKind::InvariantViolation, "d != 2g + s - 1");
  }
  return gm;
}

IntMatrix boundary_matrix(const CombinatorialData& pi, const VertexPermutation& sigma) {
  IntMatrix m(sigma.cycles.size(), pi.size());
  for (Letter a = 0; a < pi.size(); ++a) {
    // The indicator of the top interval jumps up at its left end (value
    // left-limit minus right-limit = -1) and down at its right end (+1).
    m(sigma.cycle_of_u[static_cast<std::size_t>(pi.top(a) - 1)], a) -= 1;
    m(sigma.cycle_of_u[static_cast<std::size_t>(pi.top(a))], a) += 1;
  }
  return m;
}

}  // namespace iemcoh
