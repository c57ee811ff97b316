#pragma once

// Finite-horizon classification of point pairs. Windows are compared at
// common times |n| <= H with resolution L (centred windows of 2L+1 symbols).
// Proximality is only ever claimed within the horizon and distality only up
// to it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minflow/factors.hpp"
#include "minflow/points.hpp"

namespace minflow {

enum class Verdict {
  positively_asymptotic,
  negatively_asymptotic,
  doubly_asymptotic,
  proximal_within_horizon,
  distal_up_to_horizon,
};

std::string to_string(Verdict v);

inline constexpr std::int64_t kDefaultHorizon = std::int64_t{1} << 16;
inline constexpr std::int64_t kDefaultResolution = 64;

struct PairClassification {
  Verdict verdict = Verdict::distal_up_to_horizon;
  std::int64_t horizon = 0;
  std::int64_t resolution = 0;
  // Smallest |n| (non-negative on ties) with agreeing centred windows.
  std::optional<std::int64_t> witness_n;
  // Minimum number of disagreements in a centred window; distal verdicts only.
  std::optional<std::int64_t> separation;
  // Windows agree for all n in [forward_from, H] (resp. [-H, backward_to]).
  std::optional<std::int64_t> forward_from;
  std::optional<std::int64_t> backward_to;

  bool is_asymptotic() const;
  bool is_proximal() const { return verdict != Verdict::distal_up_to_horizon; }
};

// Positively asymptotic: windows agree for every n in [n0, H] with n0 <= H/2.
// Negatively asymptotic is the mirror image; doubly when both hold.
PairClassification classify_pair(const Point& p, const Point& q,
                                 std::int64_t horizon = kDefaultHorizon,
                                 std::int64_t resolution = kDefaultResolution);

enum class Direction { forward, backward };

// Partition of `fiber` (as sorted index classes) merging pairs asymptotic in
// the given direction.
std::vector<std::vector<int>> asymptotic_collapse(const std::vector<Point>& fiber,
                                                  Direction direction,
                                                  std::int64_t horizon = kDefaultHorizon,
                                                  std::int64_t resolution = kDefaultResolution);

struct CofiberCandidate {
  Word window;
  std::string point;  // constructor of the representative point
  bool is_self = false;
  std::optional<PairClassification> classification;
};

struct DistalCertificate {
  bool granted = false;
  std::int64_t horizon = 0;
  std::int64_t resolution = 0;
  int levels = 0;
  OdometerAddress address;
  std::size_t census_cardinality = 0;
  std::vector<CofiberCandidate> cofiber;
  std::string reason;
};

// Every point sharing p's level-k address (one representative per census
// window) must be distal from p up to the horizon.
DistalCertificate distal_certificate(const Point& p, std::int64_t horizon, std::int64_t resolution,
                                     int levels);

// Points of the dyadic odometer itself: fibers of the identity factor map
// are singletons, so the certificate is immediate.
DistalCertificate distal_certificate(const OdometerAddress& z, std::int64_t horizon,
                                     std::int64_t resolution);

}  // namespace minflow
