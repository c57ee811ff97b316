#include "minflow/joins.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "minflow/error.hpp"

namespace minflow {

bool JointLanguage::single_valued() const {
  return std::all_of(output_map.begin(), output_map.end(),
                     [](const auto& e) { return e.second.size() == 1; });
}

JointLanguage joint_language(const Point& p, const Point& q, std::int64_t L, std::int64_t T) {
  if (p.system() != q.system()) throw DomainError("points belong to different systems");
  if (L < 0 || T < 0) throw DomainError("resolution and steps must be non-negative");
  const Word a = p.window(-L, T + L);
  const Word b = q.window(-L, T + L);
  const auto width = static_cast<std::size_t>(2 * L + 1);
  JointLanguage w;
  w.resolution = L;
  w.steps = T;
  for (std::int64_t n = 0; n <= T; ++n) {
    const auto at = static_cast<std::size_t>(n);
    Word first = a.substr(at, width);
    w.output_map[first].insert(b[at + static_cast<std::size_t>(L)]);
    w.pairs.emplace(std::move(first), b.substr(at, width));
  }
  return w;
}

bool member_pair(const JointLanguage& w, std::string_view a, std::string_view b) {
  const auto width = static_cast<std::size_t>(2 * w.resolution + 1);
  if (a.size() != width || b.size() != width)
    throw DomainError("membership test needs two windows of length " + std::to_string(width));
  return w.pairs.count({Word(a), Word(b)}) > 0;
}

JointTuples joint_tuples(const std::vector<Point>& points, std::int64_t L, std::int64_t T) {
  if (L < 0 || T < 0) throw DomainError("resolution and steps must be non-negative");
  std::vector<Word> rows;
  for (const auto& p : points) {
    if (p.system() != points.front().system()) throw DomainError("points belong to different systems");
    rows.push_back(p.window(-L, T + L));
  }
  const auto width = static_cast<std::size_t>(2 * L + 1);
  JointTuples j;
  j.resolution = L;
  j.steps = T;
  for (std::int64_t n = 0; n <= T; ++n) {
    std::vector<Word> tuple;
    for (const auto& r : rows) tuple.push_back(r.substr(static_cast<std::size_t>(n), width));
    j.tuples.insert(std::move(tuple));
  }
  return j;
}

std::set<std::uint64_t> address_differences(const Point& p, const Point& q, std::int64_t T,
                                            int levels, std::int64_t stride) {
  if (stride <= 0) throw DomainError("stride must be positive");
  std::set<std::uint64_t> out;
  for (std::int64_t n = 0; n <= T; n += stride)
    out.insert(difference(address(p.shifted(n), levels), address(q.shifted(n), levels)));
  return out;
}

std::string to_string(Case c) {
  switch (c) {
    case Case::case1:
      return "Case1";
    case Case::case2:
      return "Case2";
    case Case::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

DichotomyVerdict dichotomy(const Point& x0, const DistalCertificate& certificate, const Point& x,
                           const DichotomyParams& params) {
  if (!certificate.granted)
    throw PreconditionError("base point has no distal certificate: " + certificate.reason);
  if (x0.system() != x.system()) throw DomainError("points belong to different systems");
  const auto& sys = x0.system();
  const std::int64_t L = params.resolution;
  DichotomyVerdict v;
  v.resolution = L;
  v.steps = params.steps;

  const JointLanguage w = joint_language(x0, x, L, params.steps);
  v.flipped_probe = {x0.window(-L, L), flip_word(x.window(-L, L), sys->alphabet_size())};
  if (member_pair(w, v.flipped_probe.first, v.flipped_probe.second)) {
    v.kind = Case::case1;
    v.membership_witness = v.flipped_probe;
    v.note = "flipped pair observed in the joint orbit";
    return v;
  }
  if (!w.single_valued()) {
    v.note = "output map is multi-valued at this resolution";
    return v;
  }

  const int budget = static_cast<int>(std::min<std::int64_t>(params.radius_budget, L));
  std::optional<std::map<Word, char>> fitted;
  int r = 0;
  for (; r <= budget && !fitted; ++r) {
    std::map<Word, char> rule;
    bool consistent = true;
    for (const auto& [first, outs] : w.output_map) {
      auto [it, fresh] = rule.try_emplace(first.substr(static_cast<std::size_t>(L - r), 2 * r + 1),
                                          *outs.begin());
      if (!fresh && it->second != *outs.begin()) {
        consistent = false;
        break;
      }
    }
    if (consistent) fitted = std::move(rule);
  }
  if (!fitted) {
    v.note = "no rule of radius <= " + std::to_string(budget) + " fits the output map";
    return v;
  }
  --r;
  v.fitted_radius = r;
  for (const auto& block : sys->language(static_cast<std::size_t>(2 * r + 1))) {
    if (!fitted->count(block)) {
      v.note = "admissible block '" + block + "' never observed";
      return v;
    }
  }
  // Observed first windows are admissible, so the rule is keyed by exactly the language.
  SlidingBlockCode code(sys, r, std::move(*fitted));
  if (!passes_endomorphism_check(code, params.check_len)) {
    v.note = "fitted rule fails the endomorphism check";
    return v;
  }
  if (!invert(code, params.radius_budget)) {
    v.note = "fitted rule has no inverse of radius <= " + std::to_string(params.radius_budget);
    return v;
  }
  v.kind = Case::case2;
  v.code = std::move(code);
  v.note = "joint orbit is the graph of an invertible code";
  return v;
}

Point alternating_point(const SystemPtr& sys, int levels) {
  std::vector<int> digits(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) digits[j] = j % 2;
  return Point::from_address(sys, std::move(digits), sys->seed());
}

std::vector<Point> shift_flip_candidates(const Point& x0, int reach) {
  std::vector<Point> out;
  for (int k = -reach; k <= reach; ++k) out.push_back(x0.shifted(k));
  if (!x0.system()->is_flip_closed()) return out;
  for (int k = -reach; k <= reach; ++k) out.push_back(x0.shifted(k).flipped());
  return out;
}

namespace {

std::vector<SlidingBlockCode> realized_automorphisms(const SystemPtr& sys, int radius,
                                                     std::size_t check_len) {
  auto found = enumerate_endomorphisms(sys, radius, {check_len});
  std::vector<SlidingBlockCode> out;
  for (auto& c : found.codes)
    if (invert(c, 2 * radius)) out.push_back(std::move(c));
  return out;
}

std::vector<SrRecord> run_dichotomies(const Point& x0, const DistalCertificate& cert,
                                      const std::vector<Point>& xs, const DichotomyParams& params) {
  std::vector<SrRecord> out;
  for (const auto& x : xs) out.push_back({x.describe(), dichotomy(x0, cert, x, params)});
  return out;
}

}  // namespace

SrReport sr_report(const SystemPtr& sys, const std::optional<Point>& x0,
                   const std::vector<Point>& candidates, const SrParams& params) {
  if (sys->is_full_shift()) throw DomainError("semi-regularity reports need a substitution system");
  SrReport rep;
  rep.system = sys->name();
  rep.code_radius = params.code_radius;
  auto autos = realized_automorphisms(sys, params.code_radius, params.check_len);
  rep.realized_codes = autos.size();
  rep.group = classify_aut_group(autos);

  const bool dyadic = sys->substitution().constant_length() == 2;
  if (dyadic) {
    rep.factor = "dyadic odometer";
    // One window over a non-eventually-constant address means the factor map
    // is one-to-one there.
    std::vector<int> digits(16);
    for (int j = 0; j < 16; ++j) digits[j] = j % 2;
    auto census = fiber_census(sys, OdometerAddress(digits), 16);
    rep.almost_automorphic = census.cardinality == 1;
  } else {
    auto cx = sys->complexity(32);
    bool sturmian = true;
    for (std::size_t i = 0; i < cx.size(); ++i) sturmian = sturmian && cx[i] == i + 2;
    rep.almost_automorphic = sturmian;
    rep.factor = sturmian ? "circle rotation" : "not determined";
  }

  std::optional<DistalCertificate> cert;
  if (x0 && dyadic) {
    cert = distal_certificate(*x0, params.certificate_horizon, params.certificate_resolution,
                              params.certificate_levels);
    if (cert->granted) rep.records = run_dichotomies(*x0, *cert, candidates, params.dichotomy);
  }

  auto case2_count = [](const std::vector<SrRecord>& rs) {
    return std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r.verdict.kind == Case::case2; });
  };

  if (rep.almost_automorphic) {
    if (x0 && cert && cert->granted) {
      // Candidates over the factor translation by the 2-adic number 0011 0011 ...
      // which is not an integer, so no shift can realize it.
      const auto levels = static_cast<std::size_t>(params.certificate_levels);
      auto base = address(*x0, params.certificate_levels);
      std::vector<int> sum(levels + 8);
      int carry = 0;
      for (std::size_t j = 0; j < levels; ++j) {
        int s = base.digits()[j] + ((j / 2) % 2 == 1 ? 1 : 0) + carry;
        sum[j] = s & 1;
        carry = s >> 1;
      }
      // Further digits only widen the determined range of the candidate.
      for (std::size_t j = levels; j < sum.size(); ++j) sum[j] = static_cast<int>(j % 2);
      auto moved = Point::from_address(sys, sum, sys->seed());
      rep.translated = run_dichotomies(*x0, *cert, {moved}, params.dichotomy);
    }
    const bool shifts_only = rep.group.shape == "Z";
    const bool translations_unrealized = case2_count(rep.translated) == 0;
    rep.verdict = shifts_only && translations_unrealized ? "not SR (evidence)" : "inconclusive";
    rep.summary = "almost automorphic over the " + rep.factor + "; realized automorphisms up to radius " +
                  std::to_string(params.code_radius) + ": " + std::to_string(rep.realized_codes) +
                  " codes, group shape " + rep.group.shape +
                  ", while every factor translation is a symmetry of the factor; " +
                  std::to_string(rep.translated.size()) +
                  " non-integer translation candidates tested, none realized";
    if (!translations_unrealized) rep.summary = "a non-integer factor translation was realized";
    return rep;
  }

  if (!x0) {
    rep.verdict = "inconclusive";
    rep.summary = "no base point supplied";
  } else if (!cert || !cert->granted) {
    rep.verdict = "inconclusive";
    rep.summary = cert ? "base point has no distal certificate: " + cert->reason
                       : "base point cannot be addressed in this system";
  } else if (rep.records.empty()) {
    rep.verdict = "inconclusive";
    rep.summary = "no candidates supplied";
  } else {
    auto decided = std::count_if(rep.records.begin(), rep.records.end(),
                                 [](const auto& r) { return r.verdict.kind != Case::inconclusive; });
    auto realized = case2_count(rep.records);
    bool all = decided == static_cast<std::ptrdiff_t>(rep.records.size());
    rep.verdict = all ? "SR (evidence)" : "inconclusive";
    rep.summary = std::string(all ? "every" : "not every") +
                  " tested virtual candidate either shows Case-1 evidence or yields a realized "
                  "automorphism (" +
                  std::to_string(realized) + " realized, " + std::to_string(decided - realized) +
                  " Case-1, " + std::to_string(rep.records.size() - decided) + " inconclusive of " +
                  std::to_string(rep.records.size()) + ")";
  }
  return rep;
}

OdometerWitness odometer_sr_witness(int level, std::uint64_t seed) {
  if (level < 0 || level > 20) throw DomainError("odometer witness level must be in 0..20");
  OdometerWitness w;
  w.level = level;
  const std::uint64_t size = std::uint64_t{1} << level;
  const std::uint64_t mask = size - 1;
  auto add_one = [&](std::uint64_t x) { return (x + 1) & mask; };
  w.exhaustive = level <= 12;

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> values;
  if (w.exhaustive) {
    values.resize(size);
    std::iota(values.begin(), values.end(), 0);
  } else {
    for (int i = 0; i < 4096; ++i) values.push_back(rng() & mask);
  }

  bool all_good = true;
  std::vector<std::uint64_t> f(size);
  std::vector<char> hit(size);
  for (std::uint64_t v : values) {
    // The translation by v commutes with +1 everywhere.
    bool commutes = true;
    for (std::uint64_t x = 0; x < size && commutes; ++x)
      commutes = ((add_one(x) + v) & mask) == add_one((x + v) & mask);
    // A commuting map is forced by f(0) = v: f(x+1) = f(x)+1. The forced map
    // must close up consistently, be a bijection and equal the translation.
    f[0] = v;
    for (std::uint64_t x = 0; x + 1 < size; ++x) f[x + 1] = add_one(f[x]);
    bool forced = f[0] == add_one(f[size - 1]);
    std::fill(hit.begin(), hit.end(), 0);
    for (std::uint64_t x = 0; x < size && forced; ++x) {
      forced = !hit[f[x]] && f[x] == ((x + v) & mask);
      hit[f[x]] = 1;
    }
    all_good = all_good && commutes && forced;
  }
  w.translations = all_good ? size : 0;
  w.commuting = all_good ? size : 0;

  // Random bijections that are not translations never commute with +1.
  std::vector<std::uint64_t> perm(size);
  const int samples = size >= 4 ? 64 : 0;
  for (int s = 0; s < samples; ++s) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    bool translation = true;
    for (std::uint64_t x = 0; x < size && translation; ++x)
      translation = perm[x] == ((x + perm[0]) & mask);
    if (translation) continue;
    bool commutes = true;
    for (std::uint64_t x = 0; x < size && commutes; ++x) commutes = perm[add_one(x)] == add_one(perm[x]);
    if (commutes) all_good = false;
    else ++w.rejected_samples;
  }
  w.ok = all_good && w.translations == size;
  return w;
}

SrReport sr_report_odometer(int level) {
  auto w = odometer_sr_witness(level);
  SrReport rep;
  rep.system = "odometer";
  rep.factor = "dyadic odometer (identity factor)";
  rep.code_radius = 0;
  rep.realized_codes = static_cast<std::size_t>(w.translations);
  rep.group.shape = "Z/2^" + std::to_string(level);
  rep.verdict = w.ok ? "SR (finite-level witness)" : "inconclusive";
  rep.summary = "level " + std::to_string(level) + ": " + std::to_string(w.commuting) +
                " bijections commute with +1 and all " + std::to_string(w.translations) +
                " translations are realized" + (w.exhaustive ? " (exhaustive)" : " (sampled)");
  return rep;
}

CoalescenceReport coalescence_check(const SystemPtr& sys, int radius, std::size_t check_len) {
  CoalescenceReport rep;
  rep.system = sys->name();
  rep.radius = radius;
  rep.check_len = check_len;
  auto found = enumerate_endomorphisms(sys, radius, {check_len});
  rep.codes = found.codes.size();
  for (auto& c : found.codes)
    if (!invert(c, 2 * radius)) rep.flagged.push_back(std::move(c));
  return rep;
}

}  // namespace minflow
