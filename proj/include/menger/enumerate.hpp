#pragma once

// Exhaustive generators used as brute-force oracles: every abstract algebra
// passing the representability conditions up to a given size, every closed
// set of full function tables on a small carrier, and seed-deterministic
// random algebras found by rejection sampling.

#include <cstdint>
#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"

namespace menger {

// All binary operation tables on {0..g_size-1} that are associative, in
// ascending flat-table order.
std::vector<std::vector<Elem>> associative_binops(std::uint32_t g_size);

// Every algebra of the given size and arity whose compositions are
// associative, whose superposition is superassociative, and which passes the
// representability conditions.  Output is sorted by the concatenation of the
// superposition table and the composition tables.  A nonzero limit truncates
// the sorted output.  Sizes above 4 are rejected (InputError) -- the search
// is exhaustive by design.
std::vector<AlgebraTable> enumerate_abstract(std::uint32_t g_size,
                                             std::uint32_t n,
                                             std::size_t limit = 0);

// Every subset of the full function tables on the carrier that is closed
// under superposition and the slotwise compositions, as FunctionSets listing
// members in ascending table order.  Ordered by ascending subset mask over
// the ascending-table universe.  require_projectors keeps only subsets
// containing every projector.  Carriers with more than 16 full functions are
// rejected (InputError).
std::vector<FunctionSet> enumerate_function_algebras(
    std::uint32_t carrier, std::uint32_t n, bool require_projectors = false,
    std::size_t limit = 0);

// Keeps one representative per relabeling class (the member whose
// concatenated tables are lexicographically least), preserving the sorted
// order of representatives.  Sizes above 6 are rejected (InputError).
std::vector<AlgebraTable> reduce_isomorphic(
    const std::vector<AlgebraTable>& algebras);

// Seed-deterministic random algebra passing the same checks as
// enumerate_abstract, found by rejection sampling: random associative
// compositions, superposition forced where word actions determine it and
// filled randomly elsewhere, resampled until every check passes.
AlgebraTable random_algebra(std::uint64_t seed, std::uint32_t g_size,
                            std::uint32_t n);

}  // namespace menger
