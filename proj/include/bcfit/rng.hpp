#pragma once

#include <cstdint>
#include <random>

#include "bcfit/curves.hpp"

namespace bcfit {

/// Seedable random stream with a fixed, platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is pinned by the standard.
/// Uniform and normal variates are derived here rather than through the
/// <random> distributions, whose algorithms are implementation-defined.
///
/// Child streams: a stream for key k under root seed s is seeded with
/// splitmix64(s ^ splitmix64(k)). Per-day streams use the day's serial date
/// (days since 1970-01-01) as the key, so a day draws the same numbers no
/// matter which panel it is part of.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream child(std::uint64_t seed, std::uint64_t key);
  static RandomStream for_date(std::uint64_t seed, const Date& date);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double low, double high) { return low + (high - low) * uniform(); }
  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

std::int64_t date_serial(const Date& date);

}  // namespace bcfit
