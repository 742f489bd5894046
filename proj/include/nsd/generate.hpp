#pragma once

#include <cstdint>

#include "nsd/graph.hpp"

namespace nsd {

/// Deterministic generator for the sparse test corpus: a connected graph with
/// maximum degree exactly target_delta, mad < 3 and no isolated edges.
/// Requires n >= target_delta + 1 >= 7.
///
/// Strategy: grow a random tree around a hub that is forced to degree
/// target_delta, then add random extra edges between vertices at distance
/// >= 3 (both below the degree cap) as long as an exact mad check stays
/// below 3.
Graph generate_sparse(uint64_t seed, int n, int target_delta);

}  // namespace nsd
