#include <algorithm>

#include "doctest.h"
#include "minflow/error.hpp"
#include "minflow/joins.hpp"

using namespace minflow;

namespace {

Point x0_of(const SystemPtr& sys) { return alternating_point(sys, 20); }

}  // namespace

TEST_CASE("joins of a point with itself, its shift and its flip") {
  auto sys = make_system("morse");
  auto mu = seam_fiber(sys).mu;
  const std::int64_t L = 8, T = 2000;

  auto diag = joint_language(mu, mu, L, T);
  CHECK(diag.single_valued());
  for (const auto& [a, b] : diag.pairs) CHECK(a == b);
  for (const auto& [a, outs] : diag.output_map) CHECK(outs == std::set<char>{a[L]});

  auto shifted = joint_language(mu, mu.shifted(2), L, T);
  for (const auto& [a, outs] : shifted.output_map) CHECK(outs == std::set<char>{a[L + 2]});

  auto flipped = joint_language(mu, mu.flipped(), L, T);
  for (const auto& [a, outs] : flipped.output_map) CHECK(outs == std::set<char>{flip_symbol(a[L], 2)});
}

TEST_CASE("joint language invariants") {
  auto sys = make_system("morse");
  auto x0 = x0_of(sys);
  auto x = x0.shifted(-3).flipped();
  const std::int64_t L = 10, T = 3000;
  auto w = joint_language(x0, x, L, T);
  CHECK(w.pairs.size() <= static_cast<std::size_t>(T + 1));
  // Restricting every observed pair to resolution L-1 gives the L-1 join.
  std::set<std::pair<Word, Word>> restricted;
  for (const auto& [a, b] : w.pairs) restricted.emplace(a.substr(1, 2 * L - 1), b.substr(1, 2 * L - 1));
  CHECK(restricted == joint_language(x0, x, L - 1, T).pairs);
}

TEST_CASE("membership tests") {
  auto sys = make_system("morse");
  auto mu = seam_fiber(sys).mu;
  const std::int64_t L = 6;
  auto w = joint_language(mu, mu.shifted(2), L, 4096);
  auto a = mu.window(-L, L);
  auto b = mu.shifted(2).window(-L, L);
  CHECK(member_pair(w, a, b));
  CHECK_FALSE(member_pair(w, a, flip_word(b, 2)));
  CHECK_THROWS_AS(member_pair(w, a, "01"), DomainError);
  auto diag = joint_language(mu, mu, L, 4096);
  for (const auto& [p, q] : diag.pairs) CHECK(member_pair(diag, p, p));
}

TEST_CASE("dichotomy extracts shifts and the flip") {
  auto sys = make_system("morse");
  auto x0 = x0_of(sys);
  auto cert = distal_certificate(x0, 1 << 14, 64, 12);
  REQUIRE(cert.granted);
  DichotomyParams params{32, 1 << 14, 4, 4096};

  auto v = dichotomy(x0, cert, x0.shifted(2), params);
  CHECK(v.kind == Case::case2);
  REQUIRE(v.code.has_value());
  CHECK(*v.code == SlidingBlockCode::from_normal_form(sys, {2, 0}));
  CHECK(v.fitted_radius == 2);
  CHECK_FALSE(v.membership_witness.has_value());

  auto f = dichotomy(x0, cert, x0.flipped(), params);
  CHECK(f.kind == Case::case2);
  REQUIRE(f.code.has_value());
  CHECK(*f.code == SlidingBlockCode::from_normal_form(sys, {0, 1}));

  // Extracted codes belong to the enumerated list at their radius.
  auto listed = enumerate_endomorphisms(sys, *v.fitted_radius).codes;
  CHECK(std::find(listed.begin(), listed.end(), *v.code) != listed.end());

  // Beyond the radius budget nothing is claimed.
  auto far = dichotomy(x0, cert, x0.shifted(6), params);
  CHECK(far.kind == Case::inconclusive);
  CHECK_FALSE(far.code.has_value());
}

TEST_CASE("dichotomy requires a distal base point") {
  auto sys = make_system("morse");
  auto f = seam_fiber(sys);
  auto cert = distal_certificate(f.mu, 1 << 12, 64, 12);
  REQUIRE_FALSE(cert.granted);
  CHECK_THROWS_AS(dichotomy(f.mu, cert, f.nu), PreconditionError);
}

TEST_CASE("address differences are constant along joint orbits") {
  auto sys = make_system("morse");
  auto x0 = x0_of(sys);
  auto diffs = address_differences(x0, x0.shifted(5).flipped(), 2048, 10, 1);
  CHECK(diffs == std::set<std::uint64_t>{1024 - 5});
  CHECK(address_differences(x0, x0, 512, 8, 3) == std::set<std::uint64_t>{0});
}

TEST_CASE("joins of several points") {
  auto sys = make_system("morse");
  auto x0 = x0_of(sys);
  auto triple = joint_tuples({x0, x0, x0.shifted(1)}, 8, 3000);
  CHECK(triple.tuples.size() == joint_language(x0, x0.shifted(1), 8, 3000).pairs.size());
  for (const auto& t : triple.tuples) CHECK(t[0] == t[1]);
}

TEST_CASE("odometer translation witness") {
  CHECK(odometer_sr_witness(0).translations == 1);
  CHECK(odometer_sr_witness(1).translations == 2);
  auto w = odometer_sr_witness(3);
  CHECK(w.translations == 8);
  CHECK(w.commuting == 8);
  CHECK(w.ok);
  CHECK(w.exhaustive);
  CHECK(w.rejected_samples > 0);
  auto big = odometer_sr_witness(14);
  CHECK(big.ok);
  CHECK_FALSE(big.exhaustive);
  CHECK_THROWS_AS(odometer_sr_witness(21), DomainError);
  CHECK(sr_report_odometer(5).verdict == "SR (finite-level witness)");
}

TEST_CASE("coalescence") {
  CHECK(coalescence_check(make_system("morse"), 2).flagged.empty());
  CHECK(coalescence_check(make_system("fibonacci"), 2).flagged.empty());
  auto full = coalescence_check(make_system("full2"), 1);
  CHECK(full.codes == 256);
  bool constant_flagged = std::any_of(full.flagged.begin(), full.flagged.end(),
                                      [](const auto& c) { return c.outputs() == std::string(8, '0'); });
  CHECK(constant_flagged);
}

TEST_CASE("semi-regularity reports") {
  auto fib = sr_report(make_system("fibonacci"), std::nullopt, {});
  CHECK(fib.verdict == "not SR (evidence)");
  CHECK(fib.group.shape == "Z");
  CHECK(fib.almost_automorphic);

  auto pd_sys = make_system("period-doubling");
  auto pd_x0 = x0_of(pd_sys);
  auto pd = sr_report(pd_sys, pd_x0, shift_flip_candidates(pd_x0, 1));
  CHECK(pd.verdict == "not SR (evidence)");
  CHECK(pd.records.size() == 3);
  CHECK_FALSE(pd.translated.empty());

  auto morse = make_system("morse");
  auto x0 = x0_of(morse);
  SrParams params;
  params.dichotomy.steps = 1 << 13;
  auto rep = sr_report(morse, x0, shift_flip_candidates(x0, 2), params);
  CHECK(rep.verdict == "SR (evidence)");
  CHECK(rep.records.size() == 10);
  CHECK_FALSE(rep.almost_automorphic);
  CHECK_THROWS_AS(sr_report(make_system("full2"), std::nullopt, {}), DomainError);
}
