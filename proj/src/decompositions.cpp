#include "decompositions.hpp"

#include <algorithm>

#include "error.hpp"

namespace iemcoh {

namespace {

// Index into nk() of the deepest level whose interval contains z.
std::size_t depth(const RenormalizationPath& path, const Exact& z) {
  const auto& nk = path.nk();
  std::size_t k = 0;
  while (k + 1 < nk.size() && z < path.level(nk[k + 1]).right()) ++k;
  return k;
}

std::optional<Integer> time_bound(const RenormalizationPath& path, std::size_t k) {
  const auto& nk = path.nk();
  if (k + 1 >= nk.size()) return std::nullopt;
  return path.b_matrix(nk[k], nk[k + 1]).norm();
}

// Position i (1-based) with e[i-1] <= z < e[i], or e[i-1] < z <= e[i] from the left.
int bracket(const std::vector<Exact>& e, const Exact& z, bool from_left) {
  auto it = from_left ? std::lower_bound(e.begin(), e.end(), z) : std::upper_bound(e.begin(), e.end(), z);
  const auto i = it - e.begin();
  if (i <= 0 || i >= static_cast<long>(e.size())) fail(ErrorKind::Domain, "point outside the interval");
  return static_cast<int>(i);
}

bool inside(const Iem& t, const Exact& z, bool from_left) {
  return from_left ? (z > t.left() && z <= t.right()) : (z >= t.left() && z < t.right());
}

}  // namespace

TimeDecomposition time_decompose(const RenormalizationPath& path, const Exact& x, std::size_t n) {
  if (n == 0) fail(ErrorKind::Domain, "orbit length must be positive");
  const Iem& t = path.base();
  std::vector<Exact> orbit;
  orbit.reserve(n);
  Exact p = x;
  for (std::size_t j = 0; j < n; ++j) {
    orbit.push_back(p);
    if (j + 1 < n) p += t.offset(t.top_letter_at(p));
  }
  t.top_letter_at(orbit.back());
  TimeDecomposition td;
  td.x = x;
  td.n = n;
  td.pivot_index = static_cast<std::size_t>(std::min_element(orbit.begin(), orbit.end()) - orbit.begin());
  td.pivot = orbit[td.pivot_index];
  td.n_plus = static_cast<long>(n - td.pivot_index);
  td.n_minus = -static_cast<long>(td.pivot_index);
  std::vector<std::size_t> dep(n);
  for (std::size_t j = 0; j < n; ++j) dep[j] = depth(path, orbit[j]);
  const auto& nk = path.nk();
  auto block = [&](std::size_t k, std::size_t start, std::size_t count) {
    return TimeBlock{k, nk[k], orbit[start], count, start, time_bound(path, k)};
  };

  // Positive part: orbit indices pivot .. n-1.
  const std::size_t p0 = td.pivot_index;
  std::size_t kmax = 0;
  for (std::size_t j = p0 + 1; j < n; ++j) kmax = std::max(kmax, dep[j]);
  std::size_t at = p0;
  for (std::size_t k = kmax; k >= 1; --k) {
    std::size_t count = 0, last = at;
    for (std::size_t j = at; j < n; ++j) {
      if (dep[j] >= k) {
        ++count;
        last = j;
      }
    }
    td.positive.push_back(block(k, at, count - 1));
    at = last;
  }
  td.positive.push_back(block(0, at, n - at));

  // Negative part: orbit indices 0 .. pivot-1, peeled backwards from the pivot.
  if (p0 > 0) {
    std::size_t kneg = 0;
    for (std::size_t j = 0; j < p0; ++j) kneg = std::max(kneg, dep[j]);
    std::size_t end = p0;
    for (std::size_t k = kneg; k >= 1; --k) {
      std::size_t count = 0, first = end;
      for (std::size_t j = end + 1; j-- > 0;) {
        if (dep[j] >= k) {
          ++count;
          first = j;
        }
      }
      td.negative.push_back(block(k, first, count - 1));
      end = first;
    }
    td.negative.push_back(block(0, 0, end));
  }
  return td;
}

PartitionInterval locate(const RenormalizationPath& path, std::size_t k, const Exact& z, bool from_left) {
  const auto& nk = path.nk();
  if (k >= nk.size()) fail(ErrorKind::OutOfRange, "partition level beyond the path's positivity times");
  if (!inside(path.base(), z, from_left)) fail(ErrorKind::Domain, "point outside the interval");
  // First backward entry of z into I(T(n_k)), one induced map at a time.
  Exact w = z;
  Integer steps = 0;
  for (std::size_t m = 0; m < k; ++m) {
    const Iem& tm = path.level(nk[m]);
    const Iem& target = path.level(nk[m + 1]);
    const IntMatrix& b = path.b_from_origin(nk[m]);
    while (!inside(target, w, from_left)) {
      Letter beta = tm.pi().bottom_letter(bracket(tm.v(), w, from_left));
      w -= tm.offset(beta);
      steps += b.row_sum(beta);
    }
  }
  const Iem& tk = path.level(nk[k]);
  const int pos = bracket(tk.u(), w, from_left);
  PartitionInterval iv;
  iv.k = k;
  iv.level = nk[k];
  iv.alpha = tk.pi().top_letter(pos);
  iv.j = steps;
  iv.left = z - (w - tk.u()[static_cast<std::size_t>(pos - 1)]);
  iv.right = iv.left + tk.length(iv.alpha);
  return iv;
}

SpaceDecomposition space_decompose(const RenormalizationPath& path, const Exact& x_minus, const Exact& x_plus) {
  const Iem& t = path.base();
  if (!(x_minus < x_plus)) fail(ErrorKind::Domain, "x_minus must be smaller than x_plus");
  if (x_minus < t.left() || x_plus > t.right()) fail(ErrorKind::Domain, "endpoints outside the interval");
  const auto& nk = path.nk();
  // Smallest endpoint of P(l) >= x_minus and largest endpoint <= x_plus.
  auto lower = [&](std::size_t l) {
    PartitionInterval iv = locate(path, l, x_minus, false);
    return iv.left == x_minus ? iv.left : iv.right;
  };
  auto upper = [&](std::size_t l) {
    PartitionInterval iv = locate(path, l, x_plus, true);
    return iv.right == x_plus ? iv.right : iv.left;
  };
  auto walk = [&](std::size_t l, Exact from, const Exact& to) {
    std::vector<PartitionInterval> out;
    while (from < to) {
      out.push_back(locate(path, l, from, false));
      from = out.back().right;
    }
    return out;
  };
  SpaceDecomposition sd;
  sd.x_minus = x_minus;
  sd.x_plus = x_plus;
  std::size_t k = 0;
  Exact lo = lower(0), hi = upper(0);
  while (!(lo < hi)) {
    if (++k >= nk.size()) {
      fail(ErrorKind::OutOfRange, "interval contains no partition interval up to the last positivity time");
    }
    lo = lower(k);
    hi = upper(k);
  }
  sd.k = k;
  sd.core = walk(k, lo, hi);
  if (k >= 1) sd.core_bound = path.b_matrix(nk[k - 1], nk[k]).transpose().norm();
  sd.x_minus_levels.push_back(lo);
  sd.x_plus_levels.push_back(hi);
  for (std::size_t l = k + 1; l < nk.size(); ++l) {
    Exact nlo = lower(l), nhi = upper(l);
    sd.tails_plus.push_back(walk(l, hi, nhi));
    sd.tails_minus.push_back(walk(l, nlo, lo));
    sd.tail_bounds.push_back(path.b_matrix(nk[l - 1], nk[l]).transpose().norm());
    sd.x_minus_levels.push_back(nlo);
    sd.x_plus_levels.push_back(nhi);
    lo = nlo;
    hi = nhi;
  }
  sd.remainder = (x_plus - hi) + (lo - x_minus);
  return sd;
}

}  // namespace iemcoh
