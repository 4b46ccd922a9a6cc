#pragma once

// Randomized algebraic identities over a fixed seed. Each suite draws its own
// stream from (seed, check_id, prime), so suites are reproducible one by one.

#include "milnor_forge/report.hpp"

#include <cstddef>
#include <cstdint>

namespace milnor_forge::properties {

inline constexpr std::uint64_t default_seed = 0x5eed2024;
inline constexpr std::size_t default_cases = 200;

// check_ids: prop.q_squared, prop.q_anticommute (odd p), prop.leibniz,
// prop.graded_commutative, prop.associative, prop.distributive,
// prop.action_q0, prop.action_multiplicative, prop.dd_zero,
// prop.page_monotone, prop.rank_nullity, prop.cyclo_canonical,
// prop.cyclo_conj, prop.intersection.
ReportList run_properties(unsigned prime, std::uint64_t seed = default_seed,
                          std::size_t cases = default_cases);

} // namespace milnor_forge::properties
