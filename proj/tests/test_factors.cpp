#include <random>

#include "doctest.h"
#include "minflow/error.hpp"
#include "minflow/factors.hpp"
#include "oracles.hpp"

using namespace minflow;

namespace {

// Level-k blocks of the Morse rule are t(0 .. 2^k - 1) and its flip.
std::string morse_block(int k, char symbol) {
  auto b = oracle::prefix(oracle::morse, std::size_t{1} << k);
  return symbol == '0' ? b : oracle::flip(b);
}

std::string pd_block(int k, char symbol) {
  auto b = oracle::prefix(oracle::period_doubling, std::size_t{1} << k);
  if (symbol == '1') b.back() = b.back() == '0' ? '1' : '0';
  return b;
}

// Windows over the all-zero address: the seam between two level-k blocks.
std::set<std::string> seam_windows(std::string (*block)(int, char), int k, int L,
                                   const std::set<std::string>& two_words) {
  std::set<std::string> out;
  for (const auto& bc : two_words) {
    auto left = block(k, bc[0]);
    out.insert(left.substr(left.size() - static_cast<std::size_t>(L)) +
               block(k, bc[1]).substr(0, static_cast<std::size_t>(L + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("odometer arithmetic") {
  auto a = OdometerAddress::from_value(5, 4);
  CHECK(a.to_string() == "1010");
  CHECK(a.value() == 5);
  CHECK(a.plus(3).value() == 8);
  CHECK(a.plus(11).value() == 0);
  CHECK(a.plus(-6).value() == 15);
  CHECK(OdometerAddress::parse("0111").plus(1).to_string() == "1111");
  CHECK(OdometerAddress::parse("1111").plus(1).to_string() == "0000");
  CHECK(difference(a, OdometerAddress::from_value(7, 4)) == 14);
  CHECK(a.truncated(2).to_string() == "10");
  CHECK_THROWS_AS(OdometerAddress::parse("012"), DomainError);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto v = rng() & 0xffff;
    auto m = static_cast<std::int64_t>(rng() % 100000) - 50000;
    CHECK(OdometerAddress::from_value(v, 16).plus(m).value() ==
          static_cast<std::uint64_t>(static_cast<std::int64_t>(v) + m) % 65536);
  }
}

TEST_CASE("desubstitution") {
  auto pd = make_system("period-doubling");
  auto d = desubstitute(*pd, "01000101");
  CHECK(d.preimage == "0100");
  CHECK(d.offset == 0);

  auto morse = make_system("morse");
  auto t = oracle::prefix(oracle::morse, 200);
  for (std::size_t start : {0u, 1u, 17u, 64u}) {
    auto w = t.substr(start, 40);
    auto e = desubstitute(*morse, w);
    CHECK(e.offset == static_cast<int>(start % 2));
    // Complete blocks decode to the sequence at half the position.
    CHECK(e.preimage == t.substr((start + 1) / 2, e.preimage.size()));
  }
  CHECK_THROWS_AS(desubstitute(*morse, "01"), AmbiguityError);
  CHECK_THROWS_AS(desubstitute(*morse, "000"), InadmissibleError);
  CHECK_THROWS_AS(desubstitute(*make_system("fibonacci"), "0100"), DomainError);
}

TEST_CASE("addresses of constructed points") {
  auto sys = make_system("morse");
  auto fiber = seam_fiber(sys);
  for (const auto& p : fiber.all()) CHECK(address(p, 12).to_string() == "000000000000");
  auto x = parse_point(sys, "addr(01101001011101001011,1)");
  CHECK(address(x, 14).to_string() == "01101001011101");
  auto pd = make_system("period-doubling");
  CHECK(address(parse_point(pd, "addr(11010011010100101,0)"), 10).to_string() == "1101001101");
}

TEST_CASE("addresses locate level-k blocks of the reference sequence") {
  auto sys = make_system("morse");
  auto x = parse_point(sys, "addr(01010101010101010101,0)");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto m = static_cast<std::int64_t>(rng() % 20001) - 10000;
    auto p = x.shifted(m);
    for (int k : {3, 7, 10}) {
      auto A = address(p, k).offset();
      auto w = p.window(-A, -A + (std::int64_t{1} << k) - 1);
      CHECK((w == morse_block(k, '0') || w == morse_block(k, '1')));
      CHECK(address(p, k) == address(x, k).plus(m));
    }
  }
}

TEST_CASE("census over the seam address matches block concatenations") {
  auto morse = make_system("morse");
  auto c = fiber_census(morse, OdometerAddress::parse("000000000000"), 16);
  CHECK(c.cardinality == 4);
  CHECK(c.quotient_cardinality == 2);
  auto windows = c.windows();
  CHECK(std::set<std::string>(windows.begin(), windows.end()) ==
        seam_windows(morse_block, 12, 16, {"00", "01", "10", "11"}));
  CHECK(c.stabilized);

  auto pd = make_system("period-doubling");
  auto d = fiber_census(pd, OdometerAddress::parse("0000000000"), 16);
  auto dw = d.windows();
  CHECK(std::set<std::string>(dw.begin(), dw.end()) == seam_windows(pd_block, 10, 16, {"00", "01", "10"}));
  CHECK(d.cardinality == 2);
}

TEST_CASE("census at non-eventually-constant addresses") {
  auto morse = make_system("morse");
  auto c = fiber_census(morse, OdometerAddress::parse("0101010101010101"), 32);
  CHECK(c.cardinality == 2);
  CHECK(c.quotient_cardinality == 1);
  auto pd = make_system("period-doubling");
  CHECK(fiber_census(pd, OdometerAddress::parse("0101010101010101"), 32).cardinality == 1);
  // Level 0 is the whole language of length 2L+1.
  CHECK(c.per_level.front() == morse->language(65).size());
}

TEST_CASE("word frequencies") {
  auto morse = make_system("morse");
  auto t1 = word_frequencies(morse, 1, 1 << 12);
  CHECK(t1.count("0") == 1 << 11);
  auto t2 = word_frequencies(morse, 2, 1 << 16);
  std::size_t total = 0;
  for (const auto& [w, c] : t2.counts) {
    total += c;
    auto diff = static_cast<double>(c) - static_cast<double>(t2.count(oracle::flip(w)));
    CHECK(std::abs(diff) / static_cast<double>(t2.steps) <= 2.0 / static_cast<double>(t2.steps));
  }
  CHECK(total == t2.steps);
  auto fib = word_frequencies(make_system("fibonacci"), 1, 100000);
  CHECK(std::abs(fib.frequency("0") - 0.6180339887) < 0.01);
  // Every admissible word is listed, including those with zero count.
  CHECK(word_frequencies(morse, 4, 3).counts.size() == 10);
  CHECK(format_frequency_tsv(word_frequencies(morse, 1, 4)) == "0\t2\t0.500000\n1\t2\t0.500000\n");
}

TEST_CASE("automorphisms preserve frequencies") {
  auto sys = make_system("morse");
  const std::size_t steps = 1 << 14;
  auto base = word_frequencies(sys, 3, steps);
  for (const auto& code : enumerate_endomorphisms(sys, 2).codes) {
    auto image = image_frequencies(code, 3, steps);
    double tol = 2.0 * (code.radius() + 1) / static_cast<double>(steps);
    // Codes permute words; compare sorted frequency profiles.
    std::vector<std::size_t> a, b;
    for (const auto& e : base.counts) a.push_back(e.second);
    for (const auto& e : image.counts) b.push_back(e.second);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])) / steps <= tol);
  }
}
