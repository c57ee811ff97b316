#include "minflow/points.hpp"

#include <cctype>
#include <variant>

#include "minflow/error.hpp"

namespace minflow {

OneSidedSpec OneSidedSpec::fixed(char seed) {
  OneSidedSpec s;
  s.source_ = SubshiftSystem::Side::right;
  s.orientation_ = Orientation::right;
  s.seed_ = seed;
  return s;
}

OneSidedSpec OneSidedSpec::left_fixed(char seed) {
  OneSidedSpec s;
  s.source_ = SubshiftSystem::Side::left;
  s.orientation_ = Orientation::left;
  s.seed_ = seed;
  return s;
}

OneSidedSpec OneSidedSpec::reversed() const {
  OneSidedSpec s = *this;
  s.orientation_ = orientation_ == Orientation::right ? Orientation::left : Orientation::right;
  return s;
}

OneSidedSpec OneSidedSpec::flipped() const {
  OneSidedSpec s = *this;
  s.flip_ = !flip_;
  return s;
}

std::string OneSidedSpec::describe() const {
  std::string base = source_ == SubshiftSystem::Side::right ? "fix" : "lfix";
  base += seed_;
  if (flip_) base = "flip(" + base + ")";
  auto natural = source_ == SubshiftSystem::Side::right ? Orientation::right : Orientation::left;
  if (orientation_ != natural) base = "rev(" + base + ")";
  return base;
}

Word OneSidedSpec::prefix(const SubshiftSystem& sys, std::size_t n) const {
  auto seq = sys.one_sided(seed_, source_, n);
  Word out = seq->substr(0, n);
  if (flip_) out = flip_word(out, sys.alphabet_size());
  return out;
}

char block_symbol(const Substitution& sub, char symbol, int level, std::int64_t offset) {
  const std::int64_t len = sub.constant_length();
  std::int64_t scale = 1;
  for (int j = 1; j < level; ++j) scale *= len;
  for (int j = level; j > 0; --j) {
    std::int64_t digit = offset / scale;
    offset %= scale;
    symbol = sub.image(symbol)[digit];
    if (j > 1) scale /= len;
  }
  return symbol;
}

// ---------------------------------------------------------------------------

struct SpliceNode {
  OneSidedSpec left;
  OneSidedSpec right;
};
struct ShiftNode {
  std::shared_ptr<const Point::Node> base;
  std::int64_t k;
};
struct FlipNode {
  std::shared_ptr<const Point::Node> base;
};
struct BlocksNode {
  std::vector<int> digits;
  Word core;
  std::int64_t core_origin;
  std::int64_t offset;      // sum d_j l^j
  std::int64_t block_size;  // l^k
  bool plain_address;       // built by from_address
};

struct Point::Node {
  std::variant<SpliceNode, ShiftNode, FlipNode, BlocksNode> v;
};

namespace {

using NodePtr = std::shared_ptr<const Point::Node>;

void fill(const SubshiftSystem& sys, const Point::Node& node, std::int64_t lo, std::int64_t hi,
          Word& out) {
  if (auto* s = std::get_if<SpliceNode>(&node.v)) {
    // Left half: p(n) = L(-1-n) for n < 0.
    const int k = sys.alphabet_size();
    std::int64_t left_hi = std::min<std::int64_t>(hi, -1);
    if (lo <= left_hi) {
      auto seq = sys.one_sided(s->left.seed(), s->left.source(), static_cast<std::size_t>(-lo));
      for (std::int64_t n = lo; n <= left_hi; ++n) {
        char c = (*seq)[static_cast<std::size_t>(-1 - n)];
        out += s->left.is_flipped() ? flip_symbol(c, k) : c;
      }
    }
    if (hi >= 0) {
      std::int64_t from = std::max<std::int64_t>(lo, 0);
      auto seq = sys.one_sided(s->right.seed(), s->right.source(), static_cast<std::size_t>(hi + 1));
      for (std::int64_t n = from; n <= hi; ++n) {
        char c = (*seq)[static_cast<std::size_t>(n)];
        out += s->right.is_flipped() ? flip_symbol(c, k) : c;
      }
    }
    return;
  }
  if (auto* s = std::get_if<ShiftNode>(&node.v)) {
    fill(sys, *s->base, lo + s->k, hi + s->k, out);
    return;
  }
  if (auto* f = std::get_if<FlipNode>(&node.v)) {
    std::size_t start = out.size();
    fill(sys, *f->base, lo, hi, out);
    for (std::size_t i = start; i < out.size(); ++i) out[i] = flip_symbol(out[i], sys.alphabet_size());
    return;
  }
  const auto& b = std::get<BlocksNode>(node.v);
  const auto& sub = sys.substitution();
  const int level = static_cast<int>(b.digits.size());
  for (std::int64_t n = lo; n <= hi; ++n) {
    std::int64_t y = n + b.offset;
    std::int64_t block = floor_div(y, b.block_size) + b.core_origin;
    if (block < 0 || block >= static_cast<std::int64_t>(b.core.size()))
      throw UndeterminedError("coordinate " + std::to_string(n) +
                              " lies outside the determined range of the address point");
    out += block_symbol(sub, b.core[static_cast<std::size_t>(block)], level,
                        floor_mod(y, b.block_size));
  }
}

std::optional<Interval> range_of(const Point::Node& node) {
  if (std::holds_alternative<SpliceNode>(node.v)) return std::nullopt;
  if (auto* s = std::get_if<ShiftNode>(&node.v)) {
    auto r = range_of(*s->base);
    if (!r) return r;
    return Interval{r->first - s->k, r->second - s->k};
  }
  if (auto* f = std::get_if<FlipNode>(&node.v)) return range_of(*f->base);
  const auto& b = std::get<BlocksNode>(node.v);
  std::int64_t lo = -b.core_origin * b.block_size - b.offset;
  std::int64_t hi = lo + static_cast<std::int64_t>(b.core.size()) * b.block_size - 1;
  return Interval{lo, hi};
}

std::string describe_node(const Point::Node& node) {
  if (auto* s = std::get_if<SpliceNode>(&node.v))
    return "splice(" + s->left.describe() + "," + s->right.describe() + ")";
  if (auto* s = std::get_if<ShiftNode>(&node.v))
    return "shift(" + describe_node(*s->base) + "," + std::to_string(s->k) + ")";
  if (auto* f = std::get_if<FlipNode>(&node.v)) return "flip(" + describe_node(*f->base) + ")";
  const auto& b = std::get<BlocksNode>(node.v);
  std::string digits;
  for (int d : b.digits) digits += symbol_char(d);
  if (b.plain_address) return "addr(" + digits + "," + b.core + ")";
  return "blocks(" + digits + "," + b.core + "," + std::to_string(b.core_origin) + ")";
}

}  // namespace

Point::Point(SystemPtr sys, std::shared_ptr<const Node> node)
    : sys_(std::move(sys)), node_(std::move(node)) {}

Point Point::splice(SystemPtr sys, const OneSidedSpec& left, const OneSidedSpec& right) {
  if (left.orientation() != OneSidedSpec::Orientation::left)
    throw DomainError("left half of a splice must read leftwards (use rev(...) or lfix)");
  if (right.orientation() != OneSidedSpec::Orientation::right)
    throw DomainError("right half of a splice must read rightwards");
  check_word(std::string(1, left.seed()), sys->alphabet_size());
  check_word(std::string(1, right.seed()), sys->alphabet_size());
  // Prolongability is checked here so that bad generators fail at construction.
  left.prefix(*sys, 1);
  right.prefix(*sys, 1);
  auto node = std::make_shared<Node>(Node{SpliceNode{left, right}});
  return Point(std::move(sys), std::move(node));
}

Point Point::from_blocks(SystemPtr sys, std::vector<int> digits, Word core,
                         std::int64_t core_origin) {
  const auto& sub = sys->substitution();
  const int len = sub.constant_length();
  if (len < 2) throw DomainError("address points need a constant-length rule");
  if (digits.size() > 40) throw ResourceError("address longer than 40 levels");
  check_word(core, sys->alphabet_size());
  if (core.empty() || core_origin < 0 || core_origin >= static_cast<std::int64_t>(core.size()))
    throw DomainError("core origin outside the core word");
  if (!sys->is_admissible(core)) throw DomainError("core word '" + core + "' is not admissible");
  std::int64_t offset = 0, scale = 1;
  for (int d : digits) {
    if (d < 0 || d >= len) throw DomainError("address digit outside 0.." + std::to_string(len - 1));
    offset += d * scale;
    scale *= len;
  }
  BlocksNode node{std::move(digits), std::move(core), core_origin, offset, scale, false};
  return Point(std::move(sys), std::make_shared<Node>(Node{std::move(node)}));
}

Point Point::from_address(SystemPtr sys, std::vector<int> digits, char sheet) {
  Point p = from_blocks(std::move(sys), std::move(digits), Word(1, sheet), 0);
  auto node = std::get<BlocksNode>(p.node_->v);
  node.plain_address = true;
  return Point(p.sys_, std::make_shared<Node>(Node{std::move(node)}));
}

Point Point::shifted(std::int64_t k) const {
  if (auto* s = std::get_if<ShiftNode>(&node_->v)) {
    if (s->k + k == 0) return Point(sys_, s->base);
    return Point(sys_, std::make_shared<Node>(Node{ShiftNode{s->base, s->k + k}}));
  }
  if (k == 0) return *this;
  return Point(sys_, std::make_shared<Node>(Node{ShiftNode{node_, k}}));
}

Point Point::flipped() const {
  if (auto* f = std::get_if<FlipNode>(&node_->v)) return Point(sys_, f->base);
  return Point(sys_, std::make_shared<Node>(Node{FlipNode{node_}}));
}

Word Point::raw_window(std::int64_t lo, std::int64_t hi) const {
  if (lo > hi) throw DomainError("window requires lo <= hi");
  const auto cap = sys_->limits().horizon;
  if (lo < -cap || hi > cap)
    throw ResourceError("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] exceeds horizon cap " + std::to_string(cap));
  Word out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  fill(*sys_, *node_, lo, hi, out);
  return out;
}

Word Point::window(std::int64_t lo, std::int64_t hi) const {
  Word w = raw_window(lo, hi);
  const std::size_t n = std::min(w.size(), kWindowCheckLength);
  std::string_view v(w);
  for (std::size_t i = 0; i + n <= v.size(); ++i) {
    if (!sys_->is_admissible(v.substr(i, n))) {
      auto at = lo + static_cast<std::int64_t>(i);
      throw InadmissibleError("point " + describe() + " has inadmissible window '" +
                           std::string(v.substr(i, n)) + "' at [" + std::to_string(at) + ", " +
                           std::to_string(at + static_cast<std::int64_t>(n) - 1) + "]");
    }
  }
  return w;
}

char Point::at(std::int64_t n) const { return raw_window(n, n)[0]; }

std::optional<Interval> Point::determined_range() const { return range_of(*node_); }

std::string Point::describe() const { return describe_node(*node_); }

SeamFiber seam_fiber(const SystemPtr& sys) {
  auto q = OneSidedSpec::fixed('0');
  auto qf = q.flipped();
  return SeamFiber{
      Point::splice(sys, q.reversed(), q),
      Point::splice(sys, qf.reversed(), qf),
      Point::splice(sys, qf.reversed(), q),
      Point::splice(sys, q.reversed(), qf),
  };
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Point point(const SystemPtr& sys) {
    skip();
    if (take("splice(")) {
      auto l = side();
      expect(',');
      auto r = side();
      expect(')');
      return Point::splice(sys, l, r);
    }
    if (take("shift(")) {
      auto p = point(sys);
      expect(',');
      auto k = integer();
      expect(')');
      return p.shifted(k);
    }
    if (take("flip(")) {
      auto p = point(sys);
      expect(')');
      return p.flipped();
    }
    if (take("addr(")) {
      skip();
      std::vector<int> digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits.push_back(symbol_value(text_[pos_++]));
      expect(',');
      char sheet = digit();
      expect(')');
      return Point::from_address(sys, std::move(digits), sheet);
    }
    if (take("fix")) {
      char d = seed_arg();
      auto q = OneSidedSpec::fixed(d);
      return Point::splice(sys, q.reversed(), q);
    }
    fail("expected a point constructor");
  }

  OneSidedSpec side() {
    skip();
    if (take("rev(")) {
      auto s = side();
      expect(')');
      return s.reversed();
    }
    if (take("flip(")) {
      auto s = side();
      expect(')');
      return s.flipped();
    }
    if (take("lfix")) return OneSidedSpec::left_fixed(seed_arg());
    if (take("fix")) return OneSidedSpec::fixed(seed_arg());
    fail("expected a one-sided sequence");
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing input");
  }

 private:
  char seed_arg() {
    if (take("(")) {
      char d = digit();
      expect(')');
      return d;
    }
    return digit();
  }

  char digit() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a digit");
    return text_[pos_++];
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }

  bool take(std::string_view token) {
    skip();
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw DomainError("point constructor '" + std::string(text_) + "': " + what + " at offset " +
                      std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Point parse_point(const SystemPtr& sys, std::string_view text) {
  Parser p(text);
  auto point = p.point(sys);
  p.finish();
  return point;
}

OneSidedSpec parse_side(std::string_view text) {
  Parser p(text);
  auto s = p.side();
  p.finish();
  return s;
}

}  // namespace minflow
