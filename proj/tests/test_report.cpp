#include "doctest.h"
#include "minflow/report.hpp"

using namespace minflow;

TEST_CASE("pair report fields") {
  auto f = seam_fiber(make_system("morse"));
  auto j = to_json(classify_pair(f.mu, f.nu, 4096, 16));
  CHECK(j["verdict"] == "positively-asymptotic");
  CHECK(j["H"] == 4096);
  CHECK(j["L"] == 16);
  CHECK(j["witness_n"] == 16);
  CHECK(j["separation"].is_null());
}

TEST_CASE("census and code reports") {
  auto sys = make_system("morse");
  auto c = to_json(fiber_census(sys, OdometerAddress::parse("00000000"), 4));
  CHECK(c["address"] == "00000000");
  CHECK(c["cardinality"] == 4);
  CHECK(c["quotient_cardinality"] == 2);
  CHECK(c["windows"].size() == 4);
  auto code = to_json(SlidingBlockCode::from_normal_form(sys, {1, 1}));
  CHECK(code["radius"] == 1);
  CHECK(code["blocks"].size() == 6);
  CHECK(code["blocks"][0] == Json{"001", "0"});
}

TEST_CASE("dumps are deterministic with sorted keys") {
  auto f = seam_fiber(make_system("morse"));
  auto a = dump(to_json(classify_pair(f.nu, f.mu_prime, 2048, 8)));
  auto b = dump(to_json(classify_pair(f.nu, f.mu_prime, 2048, 8)));
  CHECK(a == b);
  CHECK(a.find("\"H\"") < a.find("\"L\""));
  CHECK(a.find("\"backward_to\"") < a.find("\"verdict\""));
  CHECK(a.back() == '\n');
}

TEST_CASE("frequency report carries exact ratios") {
  auto j = to_json(word_frequencies(make_system("morse"), 1, 8));
  CHECK(j["words"][0]["ratio"] == "4/8");
  CHECK(j["words"][0]["frequency"] == "0.500000");
}
