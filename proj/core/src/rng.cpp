#include "pcax/rng.hpp"

#include <cmath>
#include <numbers>

namespace pcax {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so that log(u1) is finite.
  const double u1 =
      (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0x7f4a7c159e3779b9ULL));
  return h;
}

}  // namespace pcax
