#pragma once

// Sliding block codes on a subshift: the concrete form of its shift-commuting
// endomorphisms. A code of radius r maps every admissible (2r+1)-block to a
// symbol; applied to a word it produces the word of centre outputs.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minflow/words.hpp"

namespace minflow {

// shift^k composed with flip^epsilon; shift^k maps a block b to b[r + k].
struct NormalForm {
  int shift = 0;
  int flip = 0;
  auto operator<=>(const NormalForm&) const = default;
};

std::string to_string(const NormalForm& nf);

class SlidingBlockCode {
 public:
  // `table` must be keyed by exactly the admissible (2r+1)-blocks.
  SlidingBlockCode(SystemPtr sys, int radius, std::map<Word, char> table);

  static SlidingBlockCode identity(SystemPtr sys);
  // shift^k o flip^epsilon at radius |k|.
  static SlidingBlockCode from_normal_form(SystemPtr sys, NormalForm nf);

  int radius() const { return radius_; }
  const std::map<Word, char>& table() const { return table_; }
  const SystemPtr& system() const { return sys_; }
  const std::optional<NormalForm>& normal_form() const { return normal_form_; }

  // Output symbols in sorted-block order; the canonical key of the rule.
  std::string outputs() const;

  Word apply(std::string_view w) const;
  char rule(std::string_view block) const;

  SlidingBlockCode padded(int radius) const;
  // Smallest radius computing the same map.
  SlidingBlockCode reduced() const;

  // Equal as maps: rules agree after padding to the larger radius.
  bool operator==(const SlidingBlockCode& other) const;

 private:
  SystemPtr sys_;
  int radius_;
  std::map<Word, char> table_;
  std::optional<NormalForm> normal_form_;
};

// c1 after c2. Throws IntegrityError if c2 produces a block c1 does not know.
SlidingBlockCode compose(const SlidingBlockCode& c1, const SlidingBlockCode& c2);

// Codes are ordered by radius, then by their output string.
bool canonical_less(const SlidingBlockCode& a, const SlidingBlockCode& b);

struct EnumerationOptions {
  std::size_t check_len = 4096;
  std::size_t max_nodes = 50'000'000;
};

struct EnumerationResult {
  std::vector<SlidingBlockCode> codes;
  std::size_t nodes = 0;
  std::size_t check_len = 0;  // results are certified up to this length
};

// All radius-r rules whose image of every admissible word of length 2r+8, and
// of the length-check_len prefix of the generated sequence, is admissible.
EnumerationResult enumerate_endomorphisms(const SystemPtr& sys, int radius,
                                          EnumerationOptions options = {});

// The same finite test applied to one code.
bool passes_endomorphism_check(const SlidingBlockCode& code, std::size_t check_len = 4096);

// A two-sided inverse of radius <= max_radius, if one exists.
std::optional<SlidingBlockCode> invert(const SlidingBlockCode& code, int max_radius);

struct GroupShape {
  std::string shape;  // "trivial", "Z", "Z/2", "Z ⊕ Z/2" or "unrecognized: N extra codes"
  std::vector<NormalForm> forms;
  std::size_t unrecognized = 0;
};

GroupShape classify_aut_group(const std::vector<SlidingBlockCode>& codes);

}  // namespace minflow
