#include "minflow/codes.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "minflow/error.hpp"

namespace minflow {

std::string to_string(const NormalForm& nf) {
  return "(" + std::to_string(nf.shift) + "," + std::to_string(nf.flip) + ")";
}

namespace {

std::optional<NormalForm> detect_normal_form(const SubshiftSystem& sys, int radius,
                                             const std::map<Word, char>& table) {
  for (int flip = 0; flip <= 1; ++flip) {
    for (int k = -radius; k <= radius; ++k) {
      bool match = std::all_of(table.begin(), table.end(), [&](const auto& entry) {
        char c = entry.first[static_cast<std::size_t>(radius + k)];
        if (flip) c = flip_symbol(c, sys.alphabet_size());
        return entry.second == c;
      });
      if (match) return NormalForm{k, flip};
    }
  }
  return std::nullopt;
}

}  // namespace

SlidingBlockCode::SlidingBlockCode(SystemPtr sys, int radius, std::map<Word, char> table)
    : sys_(std::move(sys)), radius_(radius), table_(std::move(table)) {
  if (radius_ < 0) throw DomainError("radius must be non-negative");
  const auto& blocks = sys_->language(static_cast<std::size_t>(2 * radius_ + 1));
  if (blocks.size() != table_.size())
    throw DomainError("rule table is not total on the admissible blocks");
  for (const auto& b : blocks) {
    auto it = table_.find(b);
    if (it == table_.end()) throw DomainError("rule table misses block '" + b + "'");
    check_word(std::string(1, it->second), sys_->alphabet_size());
  }
  normal_form_ = detect_normal_form(*sys_, radius_, table_);
}

SlidingBlockCode SlidingBlockCode::identity(SystemPtr sys) {
  return from_normal_form(std::move(sys), NormalForm{0, 0});
}

SlidingBlockCode SlidingBlockCode::from_normal_form(SystemPtr sys, NormalForm nf) {
  int r = std::abs(nf.shift);
  std::map<Word, char> table;
  for (const auto& b : sys->language(static_cast<std::size_t>(2 * r + 1))) {
    char c = b[static_cast<std::size_t>(r + nf.shift)];
    table.emplace(b, nf.flip ? flip_symbol(c, sys->alphabet_size()) : c);
  }
  return SlidingBlockCode(std::move(sys), r, std::move(table));
}

std::string SlidingBlockCode::outputs() const {
  std::string out;
  out.reserve(table_.size());
  for (const auto& [block, c] : table_) out += c;
  return out;
}

char SlidingBlockCode::rule(std::string_view block) const {
  auto it = table_.find(Word(block));
  if (it == table_.end()) throw DomainError("block '" + std::string(block) + "' is not admissible");
  return it->second;
}

Word SlidingBlockCode::apply(std::string_view w) const {
  const std::size_t span = static_cast<std::size_t>(2 * radius_ + 1);
  if (w.size() < span)
    throw DomainError("word of length " + std::to_string(w.size()) + " is shorter than the code span " +
                      std::to_string(span));
  Word out;
  out.reserve(w.size() - span + 1);
  for (std::size_t i = 0; i + span <= w.size(); ++i) out += rule(w.substr(i, span));
  return out;
}

SlidingBlockCode SlidingBlockCode::padded(int radius) const {
  if (radius < radius_) throw DomainError("cannot pad a code to a smaller radius");
  if (radius == radius_) return *this;
  const int extra = radius - radius_;
  std::map<Word, char> table;
  for (const auto& b : sys_->language(static_cast<std::size_t>(2 * radius + 1)))
    table.emplace(b, rule(std::string_view(b).substr(static_cast<std::size_t>(extra),
                                                     static_cast<std::size_t>(2 * radius_ + 1))));
  return SlidingBlockCode(sys_, radius, std::move(table));
}

SlidingBlockCode SlidingBlockCode::reduced() const {
  SlidingBlockCode current = *this;
  while (current.radius_ > 0) {
    std::map<Word, char> inner;
    bool consistent = true;
    for (const auto& [block, c] : current.table_) {
      Word key = block.substr(1, block.size() - 2);
      auto [it, inserted] = inner.emplace(key, c);
      if (!inserted && it->second != c) {
        consistent = false;
        break;
      }
    }
    if (!consistent) break;
    current = SlidingBlockCode(sys_, current.radius_ - 1, std::move(inner));
  }
  return current;
}

bool SlidingBlockCode::operator==(const SlidingBlockCode& other) const {
  if (sys_ != other.sys_) return false;
  int r = std::max(radius_, other.radius_);
  return padded(r).table_ == other.padded(r).table_;
}

SlidingBlockCode compose(const SlidingBlockCode& c1, const SlidingBlockCode& c2) {
  if (c1.system() != c2.system()) throw DomainError("codes act on different systems");
  const auto& sys = c1.system();
  const int r = c1.radius() + c2.radius();
  std::map<Word, char> table;
  for (const auto& b : sys->language(static_cast<std::size_t>(2 * r + 1))) {
    Word mid = c2.apply(b);
    auto it = c1.table().find(mid);
    if (it == c1.table().end())
      throw IntegrityError("inner code maps '" + b + "' to inadmissible '" + mid + "'");
    table.emplace(b, it->second);
  }
  return SlidingBlockCode(sys, r, std::move(table)).reduced();
}

bool canonical_less(const SlidingBlockCode& a, const SlidingBlockCode& b) {
  if (a.radius() != b.radius()) return a.radius() < b.radius();
  return a.outputs() < b.outputs();
}

// ---------------------------------------------------------------------------

namespace {

// Admissible test words for an endomorphism check at radius r.
struct Corpus {
  std::vector<Word> short_words;  // all admissible words of length 2r+8
  Word prefix;                    // generated prefix of length check_len
};

Corpus make_corpus(const SubshiftSystem& sys, int radius, std::size_t check_len) {
  Corpus c;
  c.short_words = sys.language(static_cast<std::size_t>(2 * radius + 8));
  if (!sys.is_full_shift() && check_len >= static_cast<std::size_t>(2 * radius + 1))
    c.prefix = sys.text(check_len)->substr(0, check_len);
  return c;
}

}  // namespace

bool passes_endomorphism_check(const SlidingBlockCode& code, std::size_t check_len) {
  const auto& sys = *code.system();
  auto corpus = make_corpus(sys, code.radius(), check_len);
  for (const auto& w : corpus.short_words)
    if (!sys.is_admissible(code.apply(w))) return false;
  if (!corpus.prefix.empty() && !sys.is_admissible(code.apply(corpus.prefix))) return false;
  return true;
}

EnumerationResult enumerate_endomorphisms(const SystemPtr& sys, int radius,
                                          EnumerationOptions options) {
  if (radius < 0) throw DomainError("radius must be non-negative");
  const std::size_t span = static_cast<std::size_t>(2 * radius + 1);
  const auto& blocks = sys->language(span);
  std::unordered_map<std::string_view, int> block_id;
  for (std::size_t i = 0; i < blocks.size(); ++i) block_id.emplace(blocks[i], static_cast<int>(i));

  auto corpus = make_corpus(*sys, radius, options.check_len);
  auto to_ids = [&](std::string_view w) {
    std::vector<int> ids;
    for (std::size_t i = 0; i + span <= w.size(); ++i) ids.push_back(block_id.at(w.substr(i, span)));
    return ids;
  };
  std::vector<std::vector<int>> words;
  for (const auto& w : corpus.short_words) words.push_back(to_ids(w));

  // Assign blocks in order of first appearance so test words fill up early.
  std::vector<int> order;
  std::vector<bool> seen(blocks.size(), false);
  auto visit = [&](const std::vector<int>& ids) {
    for (int id : ids)
      if (!seen[id]) {
        seen[id] = true;
        order.push_back(id);
      }
  };
  if (!corpus.prefix.empty()) visit(to_ids(corpus.prefix));
  for (const auto& ids : words) visit(ids);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (!seen[i]) order.push_back(static_cast<int>(i));

  std::vector<std::vector<std::pair<int, int>>> occurrences(blocks.size());
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t p = 0; p < words[w].size(); ++p)
      occurrences[words[w][p]].emplace_back(static_cast<int>(w), static_cast<int>(p));

  std::vector<int> out(blocks.size(), -1);
  EnumerationResult result;
  result.check_len = options.check_len;
  std::string image;

  // Every maximal assigned run through a fresh assignment must map to an
  // admissible word.
  auto consistent = [&](int block) {
    for (auto [w, p] : occurrences[block]) {
      const auto& ids = words[w];
      int lo = p, hi = p;
      while (lo > 0 && out[ids[lo - 1]] >= 0) --lo;
      while (hi + 1 < static_cast<int>(ids.size()) && out[ids[hi + 1]] >= 0) ++hi;
      image.clear();
      for (int i = lo; i <= hi; ++i) image += symbol_char(out[ids[i]]);
      if (!sys->is_admissible(image)) return false;
    }
    return true;
  };

  auto emit = [&]() {
    std::map<Word, char> table;
    for (std::size_t i = 0; i < blocks.size(); ++i) table.emplace(blocks[i], symbol_char(out[i]));
    SlidingBlockCode code(sys, radius, std::move(table));
    if (!corpus.prefix.empty() && !sys->is_admissible(code.apply(corpus.prefix))) return;
    result.codes.push_back(std::move(code));
  };

  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (++result.nodes > options.max_nodes)
      throw ResourceError("endomorphism search exceeded " + std::to_string(options.max_nodes) +
                          " nodes at radius " + std::to_string(radius) + " (depth " +
                          std::to_string(depth) + "/" + std::to_string(order.size()) + ", " +
                          std::to_string(result.codes.size()) + " codes found so far)");
    if (depth == order.size()) {
      emit();
      return;
    }
    int block = order[depth];
    for (int a = 0; a < sys->alphabet_size(); ++a) {
      out[block] = a;
      if (consistent(block)) self(self, depth + 1);
    }
    out[block] = -1;
  };
  dfs(dfs, 0);

  std::sort(result.codes.begin(), result.codes.end(), canonical_less);
  return result;
}

std::optional<SlidingBlockCode> invert(const SlidingBlockCode& code, int max_radius) {
  const auto& sys = code.system();
  const int r = code.radius();
  const auto identity = SlidingBlockCode::identity(sys);
  for (int radius = 0; radius <= max_radius; ++radius) {
    // The inverse must send code(w) to the centre of w for every admissible w.
    std::map<Word, char> table;
    bool ok = true;
    for (const auto& w : sys->language(static_cast<std::size_t>(2 * (radius + r) + 1))) {
      Word img = code.apply(w);
      char centre = w[static_cast<std::size_t>(radius + r)];
      auto [it, inserted] = table.emplace(std::move(img), centre);
      if (!inserted && it->second != centre) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (table.size() != sys->language(static_cast<std::size_t>(2 * radius + 1)).size()) continue;
    bool admissible_keys = std::all_of(table.begin(), table.end(),
                                       [&](const auto& e) { return sys->is_admissible(e.first); });
    if (!admissible_keys) continue;
    SlidingBlockCode candidate(sys, radius, std::move(table));
    try {
      if (compose(candidate, code) == identity && compose(code, candidate) == identity)
        return candidate;
    } catch (const IntegrityError&) {
    }
  }
  return std::nullopt;
}

GroupShape classify_aut_group(const std::vector<SlidingBlockCode>& codes) {
  GroupShape g;
  if (codes.empty()) {
    g.shape = "trivial";
    return g;
  }
  bool has_shift = false, has_flip = false;
  for (const auto& c : codes) {
    if (c.normal_form()) {
      g.forms.push_back(*c.normal_form());
      has_shift |= c.normal_form()->shift != 0;
      has_flip |= c.normal_form()->flip != 0;
    } else {
      ++g.unrecognized;
    }
  }
  std::sort(g.forms.begin(), g.forms.end());
  g.forms.erase(std::unique(g.forms.begin(), g.forms.end()), g.forms.end());
  if (g.unrecognized > 0) {
    g.shape = "unrecognized: " + std::to_string(g.unrecognized) + " extra codes";
  } else if (has_shift && has_flip) {
    g.shape = "Z ⊕ Z/2";
  } else if (has_shift) {
    g.shape = "Z";
  } else if (has_flip) {
    g.shape = "Z/2";
  } else {
    g.shape = "trivial";
  }
  return g;
}

}  // namespace minflow
