#pragma once

// Alphabets, finite words, substitutions and factor languages of the
// substitution subshifts used throughout the library (Thue-Morse,
// Fibonacci, period-doubling) plus a synthetic full shift.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace minflow {

// Words are strings of ASCII digits; symbol v is rendered as '0' + v.
using Word = std::string;

inline constexpr int kMaxAlphabet = 10;

inline char symbol_char(int v) { return static_cast<char>('0' + v); }
inline int symbol_value(char c) { return c - '0'; }

// Throws DomainError unless every symbol of w is in {0, .., alphabet_size-1}.
void check_word(std::string_view w, int alphabet_size);

// Maps symbol a to (alphabet_size - 1 - a); on {0,1} this is the 0<->1 flip.
char flip_symbol(char c, int alphabet_size);
Word flip_word(std::string_view w, int alphabet_size);

class Substitution {
 public:
  Substitution(int alphabet_size, std::vector<Word> images);

  int alphabet_size() const { return alphabet_size_; }
  const Word& image(char a) const;
  const std::vector<Word>& images() const { return images_; }

  Word apply(std::string_view w) const;

  bool is_primitive() const { return primitive_; }
  bool is_constant_length() const { return constant_length_ > 0; }
  // Common image length, 0 when images differ in length.
  int constant_length() const { return constant_length_; }

  // For constant-length rules: a column c such that a -> image(a)[c] is
  // injective. Such a column decodes a block from a single symbol.
  std::optional<int> injective_column() const { return injective_column_; }

  // Symbols whose image has `piece` as a prefix (or suffix).
  std::vector<char> with_prefix(std::string_view piece) const;
  std::vector<char> with_suffix(std::string_view piece) const;
  // Inverse of the block map, when `block` is the image of exactly one symbol.
  std::optional<char> decode(std::string_view block) const;

  bool operator==(const Substitution&) const = default;

 private:
  int alphabet_size_;
  std::vector<Word> images_;
  bool primitive_ = false;
  int constant_length_ = 0;
  std::optional<int> injective_column_;
};

// First n symbols of the one-sided fixed point grown from a prolongable seed.
Word fixed_point_prefix(const Substitution& sub, char seed, std::size_t n);

struct Limits {
  std::size_t max_language_length = 2048;
  std::size_t max_language_words = 1u << 20;
  // Points may be queried on [-horizon, horizon].
  std::int64_t horizon = std::int64_t{1} << 20;
};

// A minimal subshift presented by a primitive substitution, or a full shift.
// Languages and generated sequences are cached; all accessors are safe for
// concurrent use.
class SubshiftSystem {
 public:
  static std::shared_ptr<const SubshiftSystem> from_substitution(
      std::string name, Substitution sub, char seed, Limits limits = {});
  static std::shared_ptr<const SubshiftSystem> full_shift(std::string name, int alphabet_size,
                                                          Limits limits = {});

  const std::string& name() const { return name_; }
  int alphabet_size() const { return alphabet_size_; }
  const Limits& limits() const { return limits_; }
  bool is_full_shift() const { return !sub_.has_value(); }
  // Throws DomainError for the full shift.
  const Substitution& substitution() const;
  char seed() const { return seed_; }

  // Sorted length-n factors. n == 0 yields {""}.
  const std::vector<Word>& language(std::size_t n) const;
  bool is_admissible(std::string_view w) const;
  // p(1..n_max); entry i holds p(i+1).
  // Entry i is the number of admissible words of length i + 1.
  std::vector<std::size_t> complexity(std::size_t n_max) const;
  bool is_flip_closed(std::size_t n_max = 16) const;

  // Prefix (length >= min_len) of the one-sided fixed point from the system seed.
  std::shared_ptr<const std::string> text(std::size_t min_len) const;

  // One-sided sequences: `right` is the fixed point read rightwards from a
  // prolongable seed; `left` is the left-infinite fixed point of some power of
  // the rule ending in the seed, read leftwards from the seam.
  enum class Side { right, left };
  std::shared_ptr<const std::string> one_sided(char seed, Side side, std::size_t min_len) const;
  bool is_prolongable(char seed, Side side) const;

  // Smallest window length with a unique 2-block parse (constant length 2 only).
  std::size_t recognizability_length() const;

 private:
  struct LanguageSet {
    std::vector<Word> words;
    std::unordered_set<std::string_view> index;
  };

  SubshiftSystem() = default;
  const LanguageSet& language_set(std::size_t n) const;
  std::unique_ptr<LanguageSet> build_language(std::size_t n) const;
  std::optional<int> left_power(char seed) const;

  std::string name_;
  int alphabet_size_ = 2;
  std::optional<Substitution> sub_;
  char seed_ = '0';
  Limits limits_;

  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::unique_ptr<LanguageSet>> languages_;
  mutable std::map<std::pair<char, int>, std::shared_ptr<const std::string>> sequences_;
  mutable std::optional<std::size_t> recognizability_;
};

using SystemPtr = std::shared_ptr<const SubshiftSystem>;

// Phases (position of w[0] inside its block) at which w splits into rule
// images with an admissible preimage. Constant-length rules only.
std::vector<int> valid_block_phases(const SubshiftSystem& sys, std::string_view w);

// Built-in registry: "morse", "fibonacci", "period-doubling", and the
// synthetic "full2" (full shift on two symbols). Repeated calls with the same
// name return the same shared instance.
SystemPtr make_system(std::string_view name);
std::vector<std::string> system_names();

// One word per line, ASCII digits, newline terminated.
std::string format_words(const std::vector<Word>& words);
std::vector<Word> parse_words(std::string_view text, int alphabet_size);

}  // namespace minflow
