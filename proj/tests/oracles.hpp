#pragma once

// Closed-form sequences used as independent references. None of them goes
// through substitution iteration.

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>

namespace oracle {

// Thue-Morse: parity of the binary digit sum.
inline char morse(std::uint64_t n) { return static_cast<char>('0' + (std::popcount(n) & 1)); }

// Period doubling: parity of the 2-adic valuation of n+1.
inline char period_doubling(std::uint64_t n) {
  return static_cast<char>('0' + (std::countr_zero(n + 1) & 1));
}

// Fibonacci word as a mechanical sequence of slope 1/phi^2.
inline char fibonacci(std::uint64_t n) {
  const double alpha = (3.0 - std::sqrt(5.0)) / 2.0;
  auto f = [&](std::uint64_t m) { return static_cast<std::int64_t>(std::floor(static_cast<double>(m) * alpha)); };
  return static_cast<char>('0' + (f(n + 2) - f(n + 1)));
}

template <class F>
std::string prefix(F f, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) s[i] = f(i);
  return s;
}

// Distinct length-n factors of a long text.
inline std::set<std::string> factors(const std::string& text, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= text.size(); ++i) out.insert(text.substr(i, n));
  return out;
}

inline std::string flip(std::string w) {
  for (auto& c : w) c = c == '0' ? '1' : '0';
  return w;
}

}  // namespace oracle
