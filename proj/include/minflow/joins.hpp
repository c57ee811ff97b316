#pragma once

// Orbit closures of pairs of points at finite resolution, the two-case
// analysis of such a closure, and the reports built on it: semi-regularity
// evidence, coalescence and the odometer translation witness.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "minflow/codes.hpp"
#include "minflow/factors.hpp"
#include "minflow/pairs.hpp"
#include "minflow/points.hpp"

namespace minflow {

// Pairs of centred (2L+1)-windows of (p, q) observed at common times
// 0 <= n <= T, with the induced map from first windows to the centre
// symbols seen in the second coordinate.
struct JointLanguage {
  std::int64_t resolution = 0;
  std::int64_t steps = 0;
  std::set<std::pair<Word, Word>> pairs;
  std::map<Word, std::set<char>> output_map;

  bool single_valued() const;
};

JointLanguage joint_language(const Point& p, const Point& q, std::int64_t resolution,
                             std::int64_t steps);

// Observed membership only: false means "not seen within (L, T)".
bool member_pair(const JointLanguage& w, std::string_view a, std::string_view b);

// Joint windows of finitely many points at common times.
struct JointTuples {
  std::int64_t resolution = 0;
  std::int64_t steps = 0;
  std::set<std::vector<Word>> tuples;
};
JointTuples joint_tuples(const std::vector<Point>& points, std::int64_t resolution,
                         std::int64_t steps);

// Distinct values of address(S^n p, k) - address(S^n q, k) mod 2^k over
// n = 0, stride, 2*stride, ... <= T.
std::set<std::uint64_t> address_differences(const Point& p, const Point& q, std::int64_t steps,
                                            int levels, std::int64_t stride = 1);

enum class Case { case1, case2, inconclusive };
std::string to_string(Case c);

struct DichotomyParams {
  std::int64_t resolution = 32;
  std::int64_t steps = std::int64_t{1} << 16;
  int radius_budget = 4;
  std::size_t check_len = 4096;
};

struct DichotomyVerdict {
  Case kind = Case::inconclusive;
  std::int64_t resolution = 0;
  std::int64_t steps = 0;
  std::optional<int> fitted_radius;
  std::optional<SlidingBlockCode> code;
  // The pair (window of x0, flipped window of x) looked up in W; set as the
  // witness only when it was found.
  std::pair<Word, Word> flipped_probe;
  std::optional<std::pair<Word, Word>> membership_witness;
  std::string note;
};

// Case 1 when (x0, flip(x)) is observed in the closure of (x0, x); otherwise
// tries to read the closure as the graph of a sliding block code. Throws
// PreconditionError unless `certificate` is granted.
DichotomyVerdict dichotomy(const Point& x0, const DistalCertificate& certificate, const Point& x,
                           const DichotomyParams& params = {});

struct SrParams {
  int code_radius = 2;
  std::size_t check_len = 4096;
  DichotomyParams dichotomy;
  std::int64_t certificate_horizon = kDefaultHorizon;
  std::int64_t certificate_resolution = kDefaultResolution;
  int certificate_levels = 12;
};

struct SrRecord {
  std::string point;
  DichotomyVerdict verdict;
};

struct SrReport {
  std::string system;
  GroupShape group;
  std::size_t realized_codes = 0;
  int code_radius = 0;
  std::string factor;           // description of the equicontinuous factor
  bool almost_automorphic = false;
  std::vector<SrRecord> records;
  std::vector<SrRecord> translated;  // candidates over non-integer factor translations
  std::string verdict;               // "SR (evidence)", "not SR (evidence)", ...
  std::string summary;
};

// The alternating-address point addr(0101..., 0) with `levels` digits.
Point alternating_point(const SystemPtr& sys, int levels = 20);
// {S^k x0, flip(S^k x0) : |k| <= reach}; the flipped half only when the
// language is closed under the flip.
std::vector<Point> shift_flip_candidates(const Point& x0, int reach);

SrReport sr_report(const SystemPtr& sys, const std::optional<Point>& x0,
                   const std::vector<Point>& candidates, const SrParams& params = {});

struct OdometerWitness {
  int level = 0;
  std::uint64_t translations = 0;  // translations verified to commute with +1
  std::uint64_t commuting = 0;     // bijections commuting with +1
  bool exhaustive = false;
  std::size_t rejected_samples = 0;  // random non-translations shown not to commute
  bool ok = false;
};

OdometerWitness odometer_sr_witness(int level, std::uint64_t seed = 20250101);
SrReport sr_report_odometer(int level);

struct CoalescenceReport {
  std::string system;
  int radius = 0;
  std::size_t check_len = 0;
  std::size_t codes = 0;
  std::vector<SlidingBlockCode> flagged;  // endomorphisms without an inverse of radius <= 2r
};

CoalescenceReport coalescence_check(const SystemPtr& sys, int radius, std::size_t check_len = 4096);

}  // namespace minflow
