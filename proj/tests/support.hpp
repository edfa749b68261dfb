#pragma once

#include <cmath>
#include <random>

#include "qwalk/coin.hpp"

namespace qw::testing {

// Smooth schedule in the theta^0/theta^1 family: each base field is
// c0 + c1 sin(k x + p) + c2 t and each rate d0 + d1 cos(k x).
inline CoinSchedule random_smooth_schedule(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoinSchedule s;
  for (int j = 1; j <= 2; ++j)
    for (int q = 0; q < 2; ++q) {
      const double c0 = u(rng), c1 = 0.5 * u(rng), k = 1.0 + u(rng), p = 3.0 * u(rng), c2 = 0.3 * u(rng);
      const double d0 = u(rng), d1 = 0.5 * u(rng);
      s.set(j, q, [=](double x, double t) { return c0 + c1 * std::sin(k * x + p) + c2 * t; },
            [=](double x, double) { return d0 + d1 * std::cos(k * x); });
    }
  return s;
}

}  // namespace qw::testing
