#include <algorithm>

#include "doctest.h"
#include "minflow/codes.hpp"
#include "minflow/error.hpp"
#include "oracles.hpp"

using namespace minflow;

namespace {

// Counts every map from (2r+1)-blocks to symbols whose image of a long
// prefix only contains factors of the reference sequence.
std::size_t brute_force_endomorphisms(char (*f)(std::uint64_t), int r) {
  const std::string text = oracle::prefix(f, 1 << 16);
  const auto blocks = oracle::factors(text, static_cast<std::size_t>(2 * r + 1));
  const std::size_t probe = 24;
  const auto allowed = oracle::factors(text, probe);
  const std::vector<std::string> keys(blocks.begin(), blocks.end());
  const std::string sample = text.substr(0, 4096 + 2 * static_cast<std::size_t>(r));
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i + 2 * r + 1 <= sample.size(); ++i)
    index.push_back(static_cast<std::size_t>(
        std::lower_bound(keys.begin(), keys.end(), sample.substr(i, 2 * r + 1)) - keys.begin()));
  std::size_t count = 0;
  for (std::uint64_t rule = 0; rule < (std::uint64_t{1} << keys.size()); ++rule) {
    std::string image;
    for (auto at : index) image += static_cast<char>('0' + ((rule >> at) & 1));
    bool ok = true;
    for (std::size_t i = 0; ok && i + probe <= image.size(); ++i) ok = allowed.count(image.substr(i, probe)) > 0;
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("enumeration agrees with exhaustive rule search") {
  for (int r = 0; r <= 2; ++r) {
    CAPTURE(r);
    CHECK(enumerate_endomorphisms(make_system("morse"), r).codes.size() ==
          brute_force_endomorphisms(oracle::morse, r));
    CHECK(enumerate_endomorphisms(make_system("period-doubling"), r).codes.size() ==
          brute_force_endomorphisms(oracle::period_doubling, r));
  }
  for (int r = 0; r <= 3; ++r) {
    CAPTURE(r);
    CHECK(enumerate_endomorphisms(make_system("fibonacci"), r).codes.size() ==
          brute_force_endomorphisms(oracle::fibonacci, r));
  }
}

TEST_CASE("Morse codes are shifts composed with the flip") {
  auto sys = make_system("morse");
  for (int r = 0; r <= 2; ++r) {
    auto found = enumerate_endomorphisms(sys, r);
    REQUIRE(found.codes.size() == static_cast<std::size_t>(2 * (2 * r + 1)));
    for (const auto& c : found.codes) {
      REQUIRE(c.normal_form().has_value());
      CHECK(std::abs(c.normal_form()->shift) <= r);
      CHECK(c == SlidingBlockCode::from_normal_form(sys, *c.normal_form()));
    }
    CHECK(std::is_sorted(found.codes.begin(), found.codes.end(), canonical_less));
  }
}

TEST_CASE("full shift radius 1 admits every rule") {
  auto found = enumerate_endomorphisms(make_system("full2"), 1);
  CHECK(found.codes.size() == 256);
}

TEST_CASE("group shape classification") {
  CHECK(classify_aut_group(enumerate_endomorphisms(make_system("morse"), 0).codes).shape == "Z/2");
  CHECK(classify_aut_group(enumerate_endomorphisms(make_system("morse"), 2).codes).shape == "Z ⊕ Z/2");
  CHECK(classify_aut_group(enumerate_endomorphisms(make_system("fibonacci"), 2).codes).shape == "Z");
  CHECK(classify_aut_group(enumerate_endomorphisms(make_system("fibonacci"), 0).codes).shape == "trivial");
  auto full = classify_aut_group(enumerate_endomorphisms(make_system("full2"), 1).codes);
  CHECK(full.shape == "unrecognized: 250 extra codes");
}

TEST_CASE("composition, padding and inverses") {
  auto sys = make_system("morse");
  auto s1 = SlidingBlockCode::from_normal_form(sys, {1, 0});
  auto s_1 = SlidingBlockCode::from_normal_form(sys, {-1, 0});
  auto flip = SlidingBlockCode::from_normal_form(sys, {0, 1});
  auto id = SlidingBlockCode::identity(sys);

  CHECK(compose(s1, s_1) == id);
  CHECK(compose(s1, s_1).radius() == 0);
  CHECK(compose(flip, flip) == id);
  CHECK(compose(s1, flip) == compose(flip, s1));
  CHECK(s1.padded(3) == s1);
  CHECK(s1.padded(3).radius() == 3);
  CHECK(s1.padded(3).reduced().radius() == 1);

  auto inv = invert(s1, 2);
  REQUIRE(inv.has_value());
  CHECK(*inv == s_1);
  CHECK(invert(flip, 0) == flip);
  CHECK_FALSE(invert(s1, 0).has_value());
}

TEST_CASE("applying codes to words") {
  auto sys = make_system("morse");
  auto s1 = SlidingBlockCode::from_normal_form(sys, {1, 0});
  auto flip = SlidingBlockCode::from_normal_form(sys, {0, 1});
  auto t = oracle::prefix(oracle::morse, 64);
  CHECK(s1.apply(t) == t.substr(2));
  CHECK(flip.apply(t) == oracle::flip(t));
  CHECK(s1.rule("011") == '1');
}

TEST_CASE("endomorphism check rejects maps leaving the system") {
  auto sys = make_system("morse");
  std::map<Word, char> zero;
  for (const auto& b : sys->language(1)) zero[b] = '0';
  SlidingBlockCode constant(sys, 0, zero);
  CHECK_FALSE(passes_endomorphism_check(constant));
  CHECK(passes_endomorphism_check(SlidingBlockCode::identity(sys)));
}

TEST_CASE("code tables must cover the language exactly") {
  auto sys = make_system("morse");
  CHECK_THROWS_AS(SlidingBlockCode(sys, 1, {{"001", '0'}}), DomainError);
}
