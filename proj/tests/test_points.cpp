#include "doctest.h"
#include "minflow/error.hpp"
#include "minflow/points.hpp"
#include "oracles.hpp"

using namespace minflow;

namespace {

// mu(n) = t(n) for n >= 0 and t(-1-n) for n < 0, with t the Morse sequence.
char mu_oracle(std::int64_t n) {
  return oracle::morse(static_cast<std::uint64_t>(n >= 0 ? n : -1 - n));
}

}  // namespace

TEST_CASE("seam fiber points agree with the reflected Morse sequence") {
  auto sys = make_system("morse");
  auto fiber = seam_fiber(sys);
  for (std::int64_t n = -3000; n <= 3000; n += 7) {
    char m = mu_oracle(n);
    char f = m == '0' ? '1' : '0';
    CHECK(fiber.mu.at(n) == m);
    CHECK(fiber.mu_prime.at(n) == f);
    CHECK(fiber.nu.at(n) == (n < 0 ? f : m));
    CHECK(fiber.nu_prime.at(n) == (n < 0 ? m : f));
  }
}

TEST_CASE("parsed constructors") {
  auto sys = make_system("morse");
  auto fiber = seam_fiber(sys);
  CHECK(parse_point(sys, "splice(rev(fix0),fix0)").window(-50, 50) == fiber.mu.window(-50, 50));
  CHECK(parse_point(sys, "fix0").window(-50, 50) == fiber.mu.window(-50, 50));
  CHECK(parse_point(sys, "splice(rev(flip(fix0)),fix0)").window(-50, 50) == fiber.nu.window(-50, 50));
  auto p = parse_point(sys, "shift(flip(splice(rev(fix0),fix0)), 5)");
  for (std::int64_t n = -40; n <= 40; ++n) CHECK(p.at(n) == flip_symbol(mu_oracle(n + 5), 2));
  CHECK_THROWS_AS(parse_point(sys, "splice(fix0,fix0)"), DomainError);
  CHECK_THROWS_AS(parse_point(sys, "shift(fix0)"), DomainError);
  CHECK_THROWS_AS(parse_point(sys, "fix0 junk"), DomainError);
}

TEST_CASE("shift and flip algebra") {
  auto sys = make_system("morse");
  auto mu = seam_fiber(sys).mu;
  CHECK(mu.shifted(3).shifted(-3).describe() == mu.describe());
  CHECK(mu.flipped().flipped().describe() == mu.describe());
  CHECK(mu.shifted(2).shifted(5).window(-20, 20) == mu.shifted(7).window(-20, 20));
  CHECK(mu.shifted(4).flipped().window(-20, 20) == mu.flipped().shifted(4).window(-20, 20));
}

TEST_CASE("address points place 0 at the given offset of the level-k block") {
  auto sys = make_system("morse");
  std::vector<int> digits{1, 0, 1, 1, 0, 0, 1, 0, 1, 1};  // A = 1 + 4 + 8 + 64 + 256 + 512
  std::int64_t A = 0;
  for (std::size_t j = 0; j < digits.size(); ++j) A += digits[j] << j;
  const std::int64_t block = 1 << digits.size();
  for (char sheet : {'0', '1'}) {
    auto p = Point::from_address(sys, digits, sheet);
    auto range = p.determined_range();
    REQUIRE(range.has_value());
    CHECK(range->first == -A);
    CHECK(range->second == block - 1 - A);
    for (std::int64_t n = -A; n < block - A; ++n) {
      char expect = oracle::morse(static_cast<std::uint64_t>(n + A));
      CHECK(p.at(n) == (sheet == '0' ? expect : flip_symbol(expect, 2)));
    }
    CHECK_THROWS_AS(p.at(block - A), UndeterminedError);
  }
}

TEST_CASE("period-doubling address points") {
  auto sys = make_system("period-doubling");
  auto p = Point::from_address(sys, {0, 1, 1, 0, 1}, '0');  // A = 2 + 4 + 16
  for (std::int64_t n = -22; n < 32 - 22; ++n)
    CHECK(p.at(n) == oracle::period_doubling(static_cast<std::uint64_t>(n + 22)));
}

TEST_CASE("window admissibility is verified") {
  auto sys = make_system("period-doubling");
  auto p = parse_point(sys, "addr(0101010101,0)");
  CHECK_NOTHROW(p.window(-100, 100));
  // The flip of a period-doubling point contains 11 and is not in the system.
  CHECK_THROWS_AS(p.flipped().window(-100, 100), InadmissibleError);
  CHECK_NOTHROW(p.flipped().raw_window(-100, 100));
}

TEST_CASE("Fibonacci splice with a left fixed point") {
  auto sys = make_system("fibonacci");
  auto p = parse_point(sys, "splice(lfix1,fix0)");
  CHECK_NOTHROW(p.window(-2000, 2000));
  for (std::int64_t n = 0; n < 200; ++n) CHECK(p.at(n) == oracle::fibonacci(static_cast<std::uint64_t>(n)));
}

TEST_CASE("floor helpers") {
  CHECK(floor_div(-1, 2) == -1);
  CHECK(floor_div(-4, 2) == -2);
  CHECK(floor_div(5, 2) == 2);
  CHECK(floor_mod(-1, 4) == 3);
  CHECK(floor_mod(9, 4) == 1);
}
