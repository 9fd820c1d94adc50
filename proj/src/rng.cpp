#include "bcfit/rng.hpp"

#include <cmath>

namespace bcfit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t date_serial(const Date& date) {
  return std::chrono::sys_days(date).time_since_epoch().count();
}

RandomStream RandomStream::child(std::uint64_t seed, std::uint64_t key) {
  return RandomStream(splitmix64(seed ^ splitmix64(key)));
}

RandomStream RandomStream::for_date(std::uint64_t seed, const Date& date) {
  return child(seed, static_cast<std::uint64_t>(date_serial(date)));
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

}  // namespace bcfit
