#pragma once

#include <string>

#include "polypow/io.hpp"

namespace polypow {

// Pseudorandom instances from SplitMix64 seeded with `seed`. Coefficients
// are drawn in a fixed order with SplitMix64::below(p), so a (kind, r, d,
// seed, p) tuple gives the same bytes on every platform.
enum class InstanceKind { Matrix, Spec, Bivariate };

PolyMatrix random_matrix(const Field& f, std::size_t r, std::size_t d, u64 seed);
// Coefficients and initial terms of degree <= d.
CFiniteSpec random_spec(const Field& f, std::size_t r, std::size_t d, u64 seed);
// P monic of y-degree r, Q of y-degree < r, x-degrees <= d.
BivariateInstance random_bivariate(const Field& f, std::size_t r, std::size_t d, u64 seed);

std::string gen_instance(InstanceKind kind, std::size_t r, std::size_t d, u64 seed, const Field& f);

}  // namespace polypow
