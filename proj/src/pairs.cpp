#include "minflow/pairs.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "minflow/error.hpp"

namespace minflow {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::positively_asymptotic:
      return "positively-asymptotic";
    case Verdict::negatively_asymptotic:
      return "negatively-asymptotic";
    case Verdict::doubly_asymptotic:
      return "doubly-asymptotic";
    case Verdict::proximal_within_horizon:
      return "proximal-within-horizon";
    case Verdict::distal_up_to_horizon:
      return "distal-up-to-horizon";
  }
  return "unknown";
}

bool PairClassification::is_asymptotic() const {
  return verdict == Verdict::positively_asymptotic || verdict == Verdict::negatively_asymptotic ||
         verdict == Verdict::doubly_asymptotic;
}

PairClassification classify_pair(const Point& p, const Point& q, std::int64_t H, std::int64_t L) {
  if (p.system() != q.system()) throw DomainError("points belong to different systems");
  if (H < 0 || L < 0) throw DomainError("horizon and resolution must be non-negative");
  const std::int64_t lo = -H - L, hi = H + L;
  const Word a = p.window(lo, hi);
  const Word b = q.window(lo, hi);
  const auto size = static_cast<std::size_t>(hi - lo + 1);

  // prefix[i] = disagreements among coordinates lo .. lo+i-1
  std::vector<std::int64_t> prefix(size + 1, 0);
  std::optional<std::int64_t> first_dis, last_dis;
  for (std::size_t i = 0; i < size; ++i) {
    bool differ = a[i] != b[i];
    prefix[i + 1] = prefix[i] + (differ ? 1 : 0);
    if (differ) {
      auto coord = lo + static_cast<std::int64_t>(i);
      if (!first_dis) first_dis = coord;
      last_dis = coord;
    }
  }

  PairClassification c;
  c.horizon = H;
  c.resolution = L;

  std::int64_t min_sep = 2 * L + 2;
  for (std::int64_t n = -H; n <= H; ++n) {
    auto from = static_cast<std::size_t>(n - L - lo);
    std::int64_t count = prefix[from + static_cast<std::size_t>(2 * L + 1)] - prefix[from];
    min_sep = std::min(min_sep, count);
    if (count != 0) continue;
    if (!c.witness_n || std::llabs(n) < std::llabs(*c.witness_n) ||
        (std::llabs(n) == std::llabs(*c.witness_n) && n > *c.witness_n))
      c.witness_n = n;
  }

  if (!last_dis) {
    c.forward_from = -H;
    c.backward_to = H;
  } else {
    std::int64_t n0 = *last_dis + L + 1;
    if (n0 <= H) c.forward_from = n0;
    std::int64_t n1 = *first_dis - L - 1;
    if (n1 >= -H) c.backward_to = n1;
  }
  bool forward = c.forward_from && *c.forward_from <= H / 2;
  bool backward = c.backward_to && *c.backward_to >= -(H / 2);

  if (forward && backward) {
    c.verdict = Verdict::doubly_asymptotic;
  } else if (forward) {
    c.verdict = Verdict::positively_asymptotic;
  } else if (backward) {
    c.verdict = Verdict::negatively_asymptotic;
  } else if (c.witness_n) {
    c.verdict = Verdict::proximal_within_horizon;
  } else {
    c.verdict = Verdict::distal_up_to_horizon;
    c.separation = min_sep;
  }
  return c;
}

std::vector<std::vector<int>> asymptotic_collapse(const std::vector<Point>& fiber,
                                                  Direction direction, std::int64_t H,
                                                  std::int64_t L) {
  const int n = static_cast<int>(fiber.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto c = classify_pair(fiber[i], fiber[j], H, L);
      bool merge = c.verdict == Verdict::doubly_asymptotic ||
                   (direction == Direction::forward && c.verdict == Verdict::positively_asymptotic) ||
                   (direction == Direction::backward && c.verdict == Verdict::negatively_asymptotic);
      if (merge) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> classes;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]].push_back(i);
  }
  return classes;
}

DistalCertificate distal_certificate(const Point& p, std::int64_t H, std::int64_t L, int levels) {
  const auto& sys = p.system();
  DistalCertificate cert;
  cert.horizon = H;
  cert.resolution = L;
  cert.levels = levels;
  cert.address = address(p, levels);
  auto census = fiber_census(sys, cert.address, static_cast<int>(L));
  cert.census_cardinality = census.cardinality;

  const Word self = p.window(-L, L);
  const Word flipped = flip_word(self, sys->alphabet_size());
  const std::int64_t block = std::int64_t{1} << levels;
  const std::int64_t shift = cert.address.offset();
  const std::int64_t lo_block = floor_div(-H - L + shift, block);
  const std::int64_t hi_block = floor_div(H + L + shift, block);
  const auto span = static_cast<std::size_t>(hi_block - lo_block + 1);

  cert.granted = true;
  for (const auto& entry : census.entries) {
    CofiberCandidate cand;
    cand.window = entry.window;
    if (entry.window == self) {
      cand.is_self = true;
      cand.point = p.describe();
      cert.cofiber.push_back(std::move(cand));
      continue;
    }
    std::optional<Point> rep;
    if (entry.window == flipped) {
      rep = p.flipped();
    } else {
      // Canonical representative: smallest admissible level-k word around the
      // census core, long enough to cover the horizon.
      const auto at = static_cast<std::size_t>(-entry.core_origin - lo_block);
      for (const auto& w : sys->language(span)) {
        if (std::string_view(w).substr(at, entry.core.size()) == entry.core) {
          rep = Point::from_blocks(sys, cert.address.digits(), w, -lo_block);
          break;
        }
      }
      if (!rep) throw IntegrityError("census core '" + entry.core + "' has no admissible extension");
    }
    cand.point = rep->describe();
    cand.classification = classify_pair(p, *rep, H, L);
    if (cand.classification->verdict != Verdict::distal_up_to_horizon && cert.granted) {
      cert.granted = false;
      cert.reason = cand.point + " is " + to_string(cand.classification->verdict) + " to the point";
    }
    cert.cofiber.push_back(std::move(cand));
  }
  if (cert.granted)
    cert.reason = "all " + std::to_string(cert.cofiber.size() - 1) +
                  " co-fiber candidates are distal up to the horizon";
  return cert;
}

DistalCertificate distal_certificate(const OdometerAddress& z, std::int64_t H, std::int64_t L) {
  DistalCertificate cert;
  cert.granted = true;
  cert.horizon = H;
  cert.resolution = L;
  cert.levels = z.level();
  cert.address = z;
  cert.census_cardinality = 1;
  cert.cofiber.push_back(CofiberCandidate{z.to_string(), "odometer(" + z.to_string() + ")", true, {}});
  cert.reason = "odometer fibers are singletons";
  return cert;
}

}  // namespace minflow
