#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cubicbp/blaschke.hpp"

namespace testing_support {

using cubicbp::Complex;

inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Uniform in area.
  const double rho = radius * std::sqrt(u(rng));
  return std::polar(rho, 2.0 * std::numbers::pi * u(rng));
}

inline cubicbp::UnitModulus random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return cubicbp::UnitModulus::from_angle(u(rng));
}

inline cubicbp::FiniteBlaschkeProduct random_product(std::mt19937_64& rng, std::size_t degree,
                                                     double radius = 0.95) {
  std::vector<cubicbp::DiskPoint> zs;
  for (std::size_t k = 0; k < degree; ++k) zs.emplace_back(random_in_disk(rng, radius));
  return cubicbp::FiniteBlaschkeProduct(std::move(zs), random_unit(rng));
}

inline cubicbp::DiskAutomorphism random_automorphism(std::mt19937_64& rng, double radius = 0.8) {
  return {random_unit(rng), cubicbp::DiskPoint(random_in_disk(rng, radius))};
}

}  // namespace testing_support
