#pragma once

// Bi-infinite points of a subshift, evaluated lazily on finite windows.
//
// A point is an immutable constructor tree:
//   splice(L, R)     p(n) = R(n) for n >= 0 and p(n) = L(-1-n) for n < 0
//   shift(P, k)      p(n) = P(n + k)
//   flip(P)          coordinatewise symbol flip
//   addr(d, s)       position 0 sits at offset sum d_j l^j of the level-k
//                    block rule^k(s), k = |d|; only that block is determined
//
// Textual syntax (also accepted by the CLI):
//   point := splice(side,side) | shift(point,int) | flip(point)
//          | addr(digits,sheet) | fix(d) | fixd
//   side  := fix(d) | fixd | lfix(d) | lfixd | rev(side) | flip(side)
// `fix(d)` as a point abbreviates splice(rev(fix(d)),fix(d)).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minflow/words.hpp"

namespace minflow {

// A one-sided sequence s(0), s(1), ... read away from a splice seam.
class OneSidedSpec {
 public:
  enum class Orientation { right, left };

  // fix(d): the right fixed point grown from prolongable seed d.
  static OneSidedSpec fixed(char seed);
  // lfix(d): the left-infinite fixed point of a power of the rule ending in d.
  static OneSidedSpec left_fixed(char seed);

  OneSidedSpec reversed() const;
  OneSidedSpec flipped() const;

  Orientation orientation() const { return orientation_; }
  char seed() const { return seed_; }
  bool is_flipped() const { return flip_; }
  SubshiftSystem::Side source() const { return source_; }
  std::string describe() const;

  // s(0..n-1) for the given system.
  Word prefix(const SubshiftSystem& sys, std::size_t n) const;

  bool operator==(const OneSidedSpec&) const = default;

 private:
  SubshiftSystem::Side source_ = SubshiftSystem::Side::right;
  Orientation orientation_ = Orientation::right;
  char seed_ = '0';
  bool flip_ = false;
};

using Interval = std::pair<std::int64_t, std::int64_t>;  // closed [lo, hi]

class Point {
 public:
  static Point splice(SystemPtr sys, const OneSidedSpec& left, const OneSidedSpec& right);
  static Point from_address(SystemPtr sys, std::vector<int> digits, char sheet);
  // Generalised address point: the level-k block containing 0 is
  // core[core_origin]; neighbouring blocks come from the rest of `core`.
  static Point from_blocks(SystemPtr sys, std::vector<int> digits, Word core,
                           std::int64_t core_origin);

  Point shifted(std::int64_t k) const;
  Point flipped() const;

  char at(std::int64_t n) const;
  // Symbols p(lo..hi). Verifies that every short sub-window is admissible.
  Word window(std::int64_t lo, std::int64_t hi) const;
  // Symbols without the admissibility check.
  Word raw_window(std::int64_t lo, std::int64_t hi) const;

  // Coordinates that can be evaluated; nullopt means unbounded (up to the horizon).
  std::optional<Interval> determined_range() const;

  const SystemPtr& system() const { return sys_; }
  std::string describe() const;

  struct Node;

 private:
  Point(SystemPtr sys, std::shared_ptr<const Node> node);
  SystemPtr sys_;
  std::shared_ptr<const Node> node_;
};

// Length of the sub-windows checked by Point::window.
inline constexpr std::size_t kWindowCheckLength = 32;

Point parse_point(const SystemPtr& sys, std::string_view text);
OneSidedSpec parse_side(std::string_view text);

// The four splices of the Thue-Morse seam fiber, in the order
// rev(Q)Q, rev(Q')Q', rev(Q')Q, rev(Q)Q' where Q = fix(0) and Q' = flip(Q).
struct SeamFiber {
  Point mu;         // rev(Q) Q
  Point mu_prime;   // rev(Q') Q'
  Point nu;         // rev(Q') Q
  Point nu_prime;   // rev(Q) Q'
  std::vector<Point> all() const { return {mu, mu_prime, nu, nu_prime}; }
};
SeamFiber seam_fiber(const SystemPtr& sys);

// Integer floor division and non-negative modulus.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

// Symbol at `offset` inside rule^level(symbol), for a constant-length rule.
char block_symbol(const Substitution& sub, char symbol, int level, std::int64_t offset);

}  // namespace minflow
