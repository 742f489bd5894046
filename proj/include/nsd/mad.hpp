#pragma once

#include "nsd/graph.hpp"
#include "nsd/rational.hpp"

namespace nsd {

/// Maximum of 2 e(S)/|S| over all non-empty vertex subsets S, by subset
/// enumeration. Requires 1 <= n <= 22.
Rational mad_bruteforce(const Graph& g);

/// Exact maximum average degree via densest-subgraph min cuts, for any simple
/// graph with n >= 1. Equals mad_bruteforce on its domain.
Rational mad_exact(const Graph& g);

/// True iff mad(g) < bound, decided with a single min cut. bound must be > 0.
bool mad_less_than(const Graph& g, const Rational& bound);

/// True iff some non-empty S has e(S)/|S| > num/den (strict). Exposed for the
/// generator and for tests of the flow construction.
bool exists_denser_subgraph(const Graph& g, long long num, long long den);

}  // namespace nsd
