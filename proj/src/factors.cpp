#include "minflow/factors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "minflow/error.hpp"

namespace minflow {

OdometerAddress::OdometerAddress(std::vector<int> digits) : digits_(std::move(digits)) {
  for (int d : digits_)
    if (d != 0 && d != 1) throw DomainError("odometer digits must be 0 or 1");
}

OdometerAddress OdometerAddress::from_value(std::uint64_t value, int level) {
  if (level < 0 || level > 62) throw DomainError("odometer level must be in 0..62");
  std::vector<int> d(static_cast<std::size_t>(level));
  for (int j = 0; j < level; ++j) d[j] = static_cast<int>((value >> j) & 1u);
  return OdometerAddress(std::move(d));
}

OdometerAddress OdometerAddress::parse(std::string_view digits) {
  std::vector<int> d;
  for (char c : digits) {
    if (c != '0' && c != '1') throw DomainError("odometer digits must be 0 or 1");
    d.push_back(c - '0');
  }
  return OdometerAddress(std::move(d));
}

std::string OdometerAddress::to_string() const {
  std::string s;
  for (int d : digits_) s += symbol_char(d);
  return s;
}

OdometerAddress OdometerAddress::plus(std::int64_t m) const {
  std::vector<int> out = digits_;
  // Two's complement of m supplies the digits to add, so negative m wraps.
  auto addend = static_cast<std::uint64_t>(m);
  int carry = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    int bit = j < 64 ? static_cast<int>((addend >> j) & 1u) : (m < 0 ? 1 : 0);
    int s = out[j] + bit + carry;
    out[j] = s & 1;
    carry = s >> 1;
  }
  return OdometerAddress(std::move(out));
}

OdometerAddress OdometerAddress::truncated(int level) const {
  if (level < 0 || level > this->level()) throw DomainError("truncation level out of range");
  return OdometerAddress(std::vector<int>(digits_.begin(), digits_.begin() + level));
}

std::uint64_t OdometerAddress::value() const {
  if (level() > 62) throw DomainError("address too long for an integer value");
  std::uint64_t v = 0;
  for (int j = level() - 1; j >= 0; --j) v = (v << 1) | static_cast<std::uint64_t>(digits_[j]);
  return v;
}

std::int64_t OdometerAddress::offset() const { return static_cast<std::int64_t>(value()); }

std::uint64_t difference(const OdometerAddress& a, const OdometerAddress& b) {
  if (a.level() != b.level()) throw DomainError("addresses of different levels");
  const std::uint64_t mask = a.level() >= 64 ? ~0ull : ((1ull << a.level()) - 1);
  return (a.value() - b.value()) & mask;
}

// ---------------------------------------------------------------------------

Desubstitution desubstitute(const SubshiftSystem& sys, std::string_view w) {
  const auto& sub = sys.substitution();
  if (sub.constant_length() != 2)
    throw DomainError("desubstitution needs a constant-length-2 rule");
  check_word(w, sys.alphabet_size());
  auto phases = valid_block_phases(sys, w);
  if (phases.empty()) throw InadmissibleError("no block parse of '" + std::string(w) + "'");
  if (phases.size() > 1)
    throw AmbiguityError("'" + std::string(w) + "' has " + std::to_string(phases.size()) +
                         " block parses (recognizability length " +
                         std::to_string(sys.recognizability_length()) + ")");
  Desubstitution d{{}, phases.front()};
  std::size_t pos = d.offset == 0 ? 0 : 1;
  for (; pos + 2 <= w.size(); pos += 2) {
    auto c = sub.decode(w.substr(pos, 2));
    if (!c) throw AmbiguityError("block '" + std::string(w.substr(pos, 2)) + "' has several preimages");
    d.preimage += *c;
  }
  return d;
}

OdometerAddress address(const Point& p, int levels) {
  const auto& sys = *p.system();
  const auto& sub = sys.substitution();
  if (sub.constant_length() != 2) throw DomainError("addresses need a constant-length-2 rule");
  if (levels < 0 || levels > 40) throw DomainError("address level must be in 0..40");
  const auto R = static_cast<std::int64_t>(sys.recognizability_length());
  const std::int64_t first = -(R / 2);
  const int k = sys.alphabet_size();

  std::vector<int> digits;
  auto column = sub.injective_column();
  if (column) {
    // Level-j symbols are g_j(p(stride * i + base)).
    std::array<char, kMaxAlphabet> decode_column{};
    for (int a = 0; a < k; ++a) decode_column[symbol_value(sub.images()[a][*column])] = symbol_char(a);
    std::array<char, kMaxAlphabet> g{};
    for (int a = 0; a < k; ++a) g[a] = symbol_char(a);
    std::int64_t stride = 1, base = 0;
    for (int j = 0; j < levels; ++j) {
      Word w;
      for (std::int64_t i = first; i < first + R; ++i) w += g[symbol_value(p.at(stride * i + base))];
      Desubstitution d;
      try {
        d = desubstitute(sys, w);
      } catch (const AmbiguityError& e) {
        throw AmbiguityError("address level " + std::to_string(j) + ": " + e.what());
      }
      int digit = static_cast<int>(floor_mod(d.offset - first, 2));
      digits.push_back(digit);
      base += stride * (*column - digit);
      stride *= 2;
      for (int a = 0; a < k; ++a) g[a] = decode_column[symbol_value(g[a])];
    }
    return OdometerAddress(std::move(digits));
  }

  // Generic decoding: a level-j symbol is decoded from two level-(j-1) symbols.
  std::function<char(int, std::int64_t)> eval = [&](int j, std::int64_t i) -> char {
    if (j == 0) return p.at(i);
    std::int64_t start = 2 * i - digits[j - 1];
    Word block{eval(j - 1, start), eval(j - 1, start + 1)};
    auto c = sub.decode(block);
    if (!c) throw IntegrityError("block '" + block + "' does not decode at level " + std::to_string(j));
    return *c;
  };
  for (int j = 0; j < levels; ++j) {
    Word w;
    for (std::int64_t i = first; i < first + R; ++i) w += eval(j, i);
    Desubstitution d;
    try {
      d = desubstitute(sys, w);
    } catch (const AmbiguityError& e) {
      throw AmbiguityError("address level " + std::to_string(j) + ": " + e.what());
    }
    digits.push_back(static_cast<int>(floor_mod(d.offset - first, 2)));
  }
  return OdometerAddress(std::move(digits));
}

// ---------------------------------------------------------------------------

std::vector<Word> FiberCensus::windows() const {
  std::vector<Word> out;
  for (const auto& e : entries) out.push_back(e.window);
  return out;
}

FiberCensus fiber_census(const SystemPtr& sys, const OdometerAddress& a, int resolution) {
  const auto& sub = sys->substitution();
  if (sub.constant_length() != 2) throw DomainError("census needs a constant-length-2 rule");
  if (resolution < 0) throw DomainError("resolution must be non-negative");
  const std::int64_t L = resolution;
  FiberCensus census;
  census.address = a;
  census.level = a.level();
  census.resolution = resolution;

  std::map<Word, CensusEntry> current;
  for (int j = 0; j <= a.level(); ++j) {
    const std::int64_t block = std::int64_t{1} << j;
    const std::int64_t shift = a.truncated(j).offset();
    const std::int64_t lo_block = floor_div(-L + shift, block);
    const std::int64_t hi_block = floor_div(L + shift, block);
    const auto m = static_cast<std::size_t>(hi_block - lo_block + 1);
    std::map<Word, CensusEntry> windows;
    for (const auto& core : sys->language(m)) {
      Word w;
      w.reserve(static_cast<std::size_t>(2 * L + 1));
      for (std::int64_t n = -L; n <= L; ++n) {
        std::int64_t y = n + shift;
        std::int64_t b = floor_div(y, block);
        w += block_symbol(sub, core[static_cast<std::size_t>(b - lo_block)], j, y - b * block);
      }
      windows.try_emplace(w, CensusEntry{w, core, -lo_block});
    }
    census.per_level.push_back(windows.size());
    current = std::move(windows);
  }
  for (auto& [w, e] : current) census.entries.push_back(std::move(e));
  census.cardinality = census.entries.size();
  std::set<Word> classes;
  for (const auto& e : census.entries) {
    Word f = flip_word(e.window, sys->alphabet_size());
    classes.insert(std::min(e.window, f));
  }
  census.quotient_cardinality = classes.size();
  const auto& pl = census.per_level;
  census.stabilized = pl.size() >= 2 && pl[pl.size() - 1] == pl[pl.size() - 2];
  return census;
}

// ---------------------------------------------------------------------------

std::size_t FrequencyTable::count(std::string_view w) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), w,
                             [](const auto& e, std::string_view v) { return e.first < v; });
  return it != counts.end() && it->first == w ? it->second : 0;
}

double FrequencyTable::frequency(std::string_view w) const {
  return steps == 0 ? 0.0 : static_cast<double>(count(w)) / static_cast<double>(steps);
}

namespace {

FrequencyTable count_words(const SubshiftSystem& sys, std::string_view text, std::size_t n,
                           std::size_t steps) {
  std::map<Word, std::size_t> counts;
  for (const auto& w : sys.language(n)) counts[w] = 0;
  for (std::size_t i = 0; i < steps; ++i) ++counts[Word(text.substr(i, n))];
  FrequencyTable t;
  t.length = n;
  t.steps = steps;
  t.counts.assign(counts.begin(), counts.end());
  return t;
}

}  // namespace

FrequencyTable word_frequencies(const SystemPtr& sys, std::size_t n, std::size_t steps) {
  if (n == 0) throw DomainError("word length must be positive");
  auto text = sys->text(steps + n - 1);
  return count_words(*sys, *text, n, steps);
}

FrequencyTable image_frequencies(const SlidingBlockCode& code, std::size_t n, std::size_t steps) {
  if (n == 0) throw DomainError("word length must be positive");
  const auto& sys = code.system();
  const std::size_t need = steps + n - 1 + 2 * static_cast<std::size_t>(code.radius());
  auto text = sys->text(need);
  Word image = code.apply(std::string_view(*text).substr(0, need));
  return count_words(*sys, image, n, steps);
}

std::string format_frequency_tsv(const FrequencyTable& table) {
  std::string out;
  char buf[64];
  for (const auto& [w, c] : table.counts) {
    std::snprintf(buf, sizeof buf, "\t%zu\t%.6f\n", c,
                  table.steps ? static_cast<double>(c) / static_cast<double>(table.steps) : 0.0);
    out += w;
    out += buf;
  }
  return out;
}

}  // namespace minflow
