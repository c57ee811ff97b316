#pragma once

// The factor tower of a constant-length-2 substitution subshift: block
// parsing (desubstitution), dyadic odometer addresses of points, fiber
// censuses over an address, and empirical word frequencies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minflow/codes.hpp"
#include "minflow/points.hpp"
#include "minflow/words.hpp"

namespace minflow {

// Level-k dyadic address, least significant digit first.
class OdometerAddress {
 public:
  OdometerAddress() = default;
  explicit OdometerAddress(std::vector<int> digits);
  static OdometerAddress from_value(std::uint64_t value, int level);
  // Parses a digit string such as "0101".
  static OdometerAddress parse(std::string_view digits);

  int level() const { return static_cast<int>(digits_.size()); }
  const std::vector<int>& digits() const { return digits_; }
  std::string to_string() const;

  // Adds m (any sign) modulo 2^level.
  OdometerAddress plus(std::int64_t m) const;
  OdometerAddress truncated(int level) const;
  // Integer value; levels above 62 are rejected.
  std::uint64_t value() const;
  // Offset of position 0 inside its level-k block: sum d_j 2^j.
  std::int64_t offset() const;

  bool operator==(const OdometerAddress&) const = default;

 private:
  std::vector<int> digits_;
};

// (a - b) mod 2^k for addresses of equal level k.
std::uint64_t difference(const OdometerAddress& a, const OdometerAddress& b);

struct Desubstitution {
  Word preimage;  // decoded complete blocks inside w
  int offset;     // position of w[0] inside its block
};

// Unique parse of w into rule images. Throws AmbiguityError when more than
// one phase is valid and InadmissibleError when none is.
Desubstitution desubstitute(const SubshiftSystem& sys, std::string_view w);

// Level-k address of p: digit j is the block phase of position 0 after j
// desubstitutions.
OdometerAddress address(const Point& p, int levels);

struct CensusEntry {
  Word window;
  Word core;               // level-k word that produced the window
  std::int64_t core_origin;  // index in `core` of the block containing 0
};

struct FiberCensus {
  OdometerAddress address;
  int level = 0;
  int resolution = 0;
  std::vector<CensusEntry> entries;  // sorted by window
  std::size_t cardinality = 0;
  std::size_t quotient_cardinality = 0;  // classes under the symbol flip
  std::vector<std::size_t> per_level;    // cardinality at levels 0..k
  bool stabilized = false;

  std::vector<Word> windows() const;
};

// Centred (2L+1)-windows realizable by points whose address truncates to `a`.
FiberCensus fiber_census(const SystemPtr& sys, const OdometerAddress& a, int resolution);

struct FrequencyTable {
  std::size_t length = 0;
  std::size_t steps = 0;
  std::vector<std::pair<Word, std::size_t>> counts;  // sorted by word

  std::size_t count(std::string_view w) const;
  double frequency(std::string_view w) const;
};

// Counts of length-n words starting at positions 0..steps-1 of the generated
// sequence. Every admissible length-n word is listed.
FrequencyTable word_frequencies(const SystemPtr& sys, std::size_t n, std::size_t steps);

// Same counts along the image of the generated sequence under `code`.
FrequencyTable image_frequencies(const SlidingBlockCode& code, std::size_t n, std::size_t steps);

// word<TAB>count<TAB>frequency, one line per word, frequency with 6 decimals.
std::string format_frequency_tsv(const FrequencyTable& table);

}  // namespace minflow
