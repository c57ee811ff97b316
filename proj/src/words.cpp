#include "minflow/words.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "minflow/error.hpp"

namespace minflow {

void check_word(std::string_view w, int alphabet_size) {
  for (char c : w) {
    int v = symbol_value(c);
    if (v < 0 || v >= alphabet_size) {
      throw DomainError("symbol '" + std::string(1, c) + "' outside alphabet of size " +
                        std::to_string(alphabet_size));
    }
  }
}

char flip_symbol(char c, int alphabet_size) {
  return symbol_char(alphabet_size - 1 - symbol_value(c));
}

Word flip_word(std::string_view w, int alphabet_size) {
  Word out(w);
  for (char& c : out) c = flip_symbol(c, alphabet_size);
  return out;
}

namespace {

bool incidence_primitive(const std::vector<Word>& images, int n) {
  using Matrix = std::vector<std::vector<bool>>;
  Matrix m(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (char c : images[a]) m[a][symbol_value(c)] = true;
  Matrix power = m;
  // Wielandt: a primitive n x n matrix has a positive power at most (n-1)^2 + 1.
  int bound = (n - 1) * (n - 1) + 1;
  for (int k = 1; k <= bound; ++k) {
    bool positive = true;
    for (int i = 0; i < n && positive; ++i)
      for (int j = 0; j < n && positive; ++j) positive = power[i][j];
    if (positive) return true;
    Matrix next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (power[i][j])
          for (int l = 0; l < n; ++l)
            if (m[j][l]) next[i][l] = true;
    power = std::move(next);
  }
  return false;
}

}  // namespace

Substitution::Substitution(int alphabet_size, std::vector<Word> images)
    : alphabet_size_(alphabet_size), images_(std::move(images)) {
  if (alphabet_size_ < 1 || alphabet_size_ > kMaxAlphabet)
    throw DomainError("alphabet size must be in 1..10");
  if (static_cast<int>(images_.size()) != alphabet_size_)
    throw DomainError("substitution must define an image for every symbol");
  for (const auto& img : images_) {
    if (img.empty()) throw DomainError("substitution images must be nonempty");
    check_word(img, alphabet_size_);
  }
  primitive_ = incidence_primitive(images_, alphabet_size_);
  std::size_t len = images_.front().size();
  bool same = std::all_of(images_.begin(), images_.end(),
                          [&](const Word& w) { return w.size() == len; });
  constant_length_ = same ? static_cast<int>(len) : 0;
  if (same) {
    for (int c = 0; c < static_cast<int>(len); ++c) {
      std::set<char> column;
      for (const auto& img : images_) column.insert(img[c]);
      if (static_cast<int>(column.size()) == alphabet_size_) {
        injective_column_ = c;
        break;
      }
    }
  }
}

const Word& Substitution::image(char a) const {
  int v = symbol_value(a);
  if (v < 0 || v >= alphabet_size_)
    throw DomainError("symbol '" + std::string(1, a) + "' outside substitution alphabet");
  return images_[v];
}

Word Substitution::apply(std::string_view w) const {
  check_word(w, alphabet_size_);
  Word out;
  for (char c : w) out += images_[symbol_value(c)];
  return out;
}

std::vector<char> Substitution::with_prefix(std::string_view piece) const {
  std::vector<char> out;
  for (int a = 0; a < alphabet_size_; ++a)
    if (std::string_view(images_[a]).starts_with(piece)) out.push_back(symbol_char(a));
  return out;
}

std::vector<char> Substitution::with_suffix(std::string_view piece) const {
  std::vector<char> out;
  for (int a = 0; a < alphabet_size_; ++a)
    if (std::string_view(images_[a]).ends_with(piece)) out.push_back(symbol_char(a));
  return out;
}

std::optional<char> Substitution::decode(std::string_view block) const {
  std::optional<char> found;
  for (int a = 0; a < alphabet_size_; ++a) {
    if (images_[a] == block) {
      if (found) return std::nullopt;
      found = symbol_char(a);
    }
  }
  return found;
}

Word fixed_point_prefix(const Substitution& sub, char seed, std::size_t n) {
  const Word& img = sub.image(seed);
  if (img.front() != seed || img.size() < 2)
    throw ConstructionError("seed '" + std::string(1, seed) + "' is not prolongable");
  Word w(1, seed);
  while (w.size() < n) w = sub.apply(w);
  w.resize(n);
  return w;
}

// ---------------------------------------------------------------------------

SystemPtr SubshiftSystem::from_substitution(std::string name, Substitution sub, char seed,
                                            Limits limits) {
  if (!sub.is_primitive()) throw ConstructionError("substitution for '" + name + "' is not primitive");
  std::shared_ptr<SubshiftSystem> sys(new SubshiftSystem());
  sys->name_ = std::move(name);
  sys->alphabet_size_ = sub.alphabet_size();
  sys->seed_ = seed;
  sys->limits_ = limits;
  sys->sub_ = std::move(sub);
  if (!sys->is_prolongable(seed, Side::right))
    throw ConstructionError("seed of '" + sys->name_ + "' is not prolongable");
  return sys;
}

SystemPtr SubshiftSystem::full_shift(std::string name, int alphabet_size, Limits limits) {
  if (alphabet_size < 1 || alphabet_size > kMaxAlphabet)
    throw DomainError("alphabet size must be in 1..10");
  std::shared_ptr<SubshiftSystem> sys(new SubshiftSystem());
  sys->name_ = std::move(name);
  sys->alphabet_size_ = alphabet_size;
  sys->limits_ = limits;
  return sys;
}

const Substitution& SubshiftSystem::substitution() const {
  if (!sub_) throw DomainError("system '" + name_ + "' is not a substitution system");
  return *sub_;
}

bool SubshiftSystem::is_prolongable(char seed, Side side) const {
  if (!sub_) return false;
  const Word& img = sub_->image(seed);
  if (side == Side::right) return img.size() >= 2 && img.front() == seed;
  return left_power(seed).has_value();
}

std::optional<int> SubshiftSystem::left_power(char seed) const {
  // Smallest power p <= 4 with rule^p(seed) ending in seed and longer than 1.
  Word w(1, seed);
  for (int p = 1; p <= 4; ++p) {
    w = sub_->apply(w);
    if (w.size() >= 2 && w.back() == seed) return p;
  }
  return std::nullopt;
}

std::shared_ptr<const std::string> SubshiftSystem::one_sided(char seed, Side side,
                                                             std::size_t min_len) const {
  if (!sub_) throw DomainError("system '" + name_ + "' has no fixed points");
  check_word(std::string_view(&seed, 1), alphabet_size_);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(seed, static_cast<int>(side));
  auto it = sequences_.find(key);
  if (it != sequences_.end() && it->second->size() >= min_len) return it->second;

  std::size_t target = std::max<std::size_t>(min_len, 64);
  if (it != sequences_.end()) target = std::max(target, 2 * it->second->size());
  std::string w(1, seed);
  if (side == Side::right) {
    const Word& img = sub_->image(seed);
    if (img.size() < 2 || img.front() != seed)
      throw ConstructionError("seed '" + std::string(1, seed) + "' is not prolongable");
    while (w.size() < target) w = sub_->apply(w);
  } else {
    auto p = left_power(seed);
    if (!p)
      throw ConstructionError("seed '" + std::string(1, seed) +
                              "' has no left-prolongable power");
    while (w.size() < target)
      for (int i = 0; i < *p; ++i) w = sub_->apply(w);
    std::reverse(w.begin(), w.end());
  }
  auto ptr = std::make_shared<const std::string>(std::move(w));
  sequences_[key] = ptr;
  return ptr;
}

std::shared_ptr<const std::string> SubshiftSystem::text(std::size_t min_len) const {
  return one_sided(seed_, Side::right, min_len);
}

std::unique_ptr<SubshiftSystem::LanguageSet> SubshiftSystem::build_language(std::size_t n) const {
  auto set = std::make_unique<LanguageSet>();
  if (n == 0) {
    set->words.emplace_back();
  } else if (!sub_) {
    double count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= alphabet_size_;
    if (count > static_cast<double>(limits_.max_language_words))
      throw ResourceError("full-shift language of length " + std::to_string(n) + " exceeds cap");
    std::size_t total = static_cast<std::size_t>(count);
    set->words.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
      Word w(n, '0');
      std::size_t v = i;
      for (std::size_t j = n; j-- > 0;) {
        w[j] = symbol_char(static_cast<int>(v % alphabet_size_));
        v /= alphabet_size_;
      }
      set->words.push_back(std::move(w));
    }
  } else {
    // Primitivity: every factor of length n occurs in a long enough prefix.
    auto t = one_sided(seed_, Side::right, std::max<std::size_t>(4096, 8 * n));
    std::string_view tv(*t);
    std::unordered_set<std::string_view> found;
    std::unordered_set<std::string_view> extendable;
    for (std::size_t i = 0; i + n <= tv.size(); ++i) {
      found.insert(tv.substr(i, n));
      if (i + n < tv.size()) extendable.insert(tv.substr(i, n));
      if (found.size() > limits_.max_language_words)
        throw ResourceError("language of length " + std::to_string(n) + " exceeds cap");
    }
    if (extendable.size() != found.size())
      throw IntegrityError("language of length " + std::to_string(n) + " is not extendable");
    set->words.assign(found.begin(), found.end());
    std::sort(set->words.begin(), set->words.end());
  }
  for (const auto& w : set->words) set->index.insert(w);
  return set;
}

const SubshiftSystem::LanguageSet& SubshiftSystem::language_set(std::size_t n) const {
  if (n > limits_.max_language_length)
    throw ResourceError("language length " + std::to_string(n) + " exceeds cap " +
                        std::to_string(limits_.max_language_length));
  {
    std::lock_guard lock(mutex_);
    auto it = languages_.find(n);
    if (it != languages_.end()) return *it->second;
  }
  auto built = build_language(n);
  const LanguageSet* shorter_ptr = nullptr;
  {
    std::lock_guard lock(mutex_);
    auto it = languages_.find(n - 1);
    if (n >= 2 && it != languages_.end()) shorter_ptr = it->second.get();
  }
  if (shorter_ptr && sub_) {
    // Factor closure against the previous length, when it is cached.
    const auto& shorter = *shorter_ptr;
    for (const auto& w : built->words) {
      std::string_view v(w);
      if (!shorter.index.contains(v.substr(0, n - 1)) || !shorter.index.contains(v.substr(1)))
        throw IntegrityError("language of length " + std::to_string(n) + " is not factor closed");
    }
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = languages_.emplace(n, std::move(built));
  return *it->second;
}

const std::vector<Word>& SubshiftSystem::language(std::size_t n) const {
  return language_set(n).words;
}

bool SubshiftSystem::is_admissible(std::string_view w) const {
  for (char c : w) {
    int v = symbol_value(c);
    if (v < 0 || v >= alphabet_size_) return false;
  }
  if (w.empty() || !sub_) return true;
  if (w.size() <= limits_.max_language_length) return language_set(w.size()).index.contains(w);
  auto t = text(std::max<std::size_t>(4096, 8 * w.size()));
  auto it = std::search(t->begin(), t->end(),
                        std::boyer_moore_horspool_searcher(w.begin(), w.end()));
  return it != t->end();
}

std::vector<std::size_t> SubshiftSystem::complexity(std::size_t n_max) const {
  std::vector<std::size_t> p;
  for (std::size_t n = 1; n <= n_max; ++n) p.push_back(language(n).size());
  return p;
}

bool SubshiftSystem::is_flip_closed(std::size_t n_max) const {
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const auto& w : language(n))
      if (!is_admissible(flip_word(w, alphabet_size_))) return false;
  return true;
}

std::size_t SubshiftSystem::recognizability_length() const {
  {
    std::lock_guard lock(mutex_);
    if (recognizability_) return *recognizability_;
  }
  const auto& sub = substitution();
  if (sub.constant_length() != 2)
    throw DomainError("recognizability is defined here for constant-length-2 rules only");
  std::optional<std::size_t> found;
  for (std::size_t n = 1; n <= 64 && !found; ++n) {
    bool unique = true;
    for (const auto& w : language(n)) {
      if (valid_block_phases(*this, w).size() != 1) {
        unique = false;
        break;
      }
    }
    if (unique) found = n;
  }
  if (!found) throw IntegrityError("recognizability length of '" + name_ + "' exceeds 64");
  std::lock_guard lock(mutex_);
  recognizability_ = found;
  return *found;
}

// ---------------------------------------------------------------------------

std::vector<int> valid_block_phases(const SubshiftSystem& sys, std::string_view w) {
  const auto& sub = sys.substitution();
  const int len = sub.constant_length();
  if (len < 2) throw DomainError("block parsing needs a constant-length rule");
  std::vector<int> phases;
  const int n = static_cast<int>(w.size());
  for (int phase = 0; phase < len; ++phase) {
    // Candidates for each preimage position covering w.
    std::vector<std::vector<char>> cands;
    int pos = 0;
    bool ok = true;
    if (phase > 0) {
      int take = std::min(len - phase, n);
      auto piece = w.substr(0, take);
      std::vector<char> c;
      if (take == len - phase) {
        c = sub.with_suffix(piece);
      } else {
        for (int a = 0; a < sys.alphabet_size(); ++a) {
          const Word& img = sub.images()[a];
          if (std::string_view(img).substr(phase, take) == piece) c.push_back(symbol_char(a));
        }
      }
      if (c.empty()) ok = false;
      cands.push_back(std::move(c));
      pos = take;
    }
    while (ok && pos < n) {
      int take = std::min(len, n - pos);
      auto piece = w.substr(pos, take);
      std::vector<char> c = take == len ? std::vector<char>{} : sub.with_prefix(piece);
      if (take == len)
        for (int a = 0; a < sys.alphabet_size(); ++a)
          if (sub.images()[a] == piece) c.push_back(symbol_char(a));
      if (c.empty()) ok = false;
      cands.push_back(std::move(c));
      pos += take;
    }
    if (!ok) continue;
    // Some choice of preimage symbols must form an admissible word.
    Word pre;
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
      if (i == cands.size()) return true;
      for (char c : cands[i]) {
        pre.push_back(c);
        if (sys.is_admissible(pre) && search(i + 1)) return true;
        pre.pop_back();
      }
      return false;
    };
    if (search(0)) phases.push_back(phase);
  }
  return phases;
}

// ---------------------------------------------------------------------------

namespace {

SystemPtr build_system(std::string_view name) {
  if (name == "morse")
    return SubshiftSystem::from_substitution("morse", Substitution(2, {"01", "10"}), '0');
  if (name == "fibonacci")
    return SubshiftSystem::from_substitution("fibonacci", Substitution(2, {"01", "0"}), '0');
  if (name == "period-doubling")
    return SubshiftSystem::from_substitution("period-doubling", Substitution(2, {"01", "00"}), '0');
  if (name == "full2") return SubshiftSystem::full_shift("full2", 2);
  throw DomainError("unknown system '" + std::string(name) + "'");
}

}  // namespace

SystemPtr make_system(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, SystemPtr, std::less<>> registry;
  std::lock_guard lock(mutex);
  if (auto it = registry.find(name); it != registry.end()) return it->second;
  auto sys = build_system(name);
  registry.emplace(std::string(name), sys);
  return sys;
}

std::vector<std::string> system_names() { return {"morse", "fibonacci", "period-doubling", "full2"}; }

std::string format_words(const std::vector<Word>& words) {
  std::string out;
  for (const auto& w : words) {
    out += w;
    out += '\n';
  }
  return out;
}

std::vector<Word> parse_words(std::string_view text, int alphabet_size) {
  std::vector<Word> words;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      throw DomainError("word file must be newline terminated");
    auto line = text.substr(start, end - start);
    check_word(line, alphabet_size);
    words.emplace_back(line);
    start = end + 1;
  }
  return words;
}

}  // namespace minflow
