#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

namespace lumpex {

/// Exact integer vector, indexed by the lexicographic edge list of a graph.
using IntVector = std::vector<mpz_class>;

/// Rank over Q of the span of `vectors` (fraction-free elimination).
/// Throws std::invalid_argument on mismatched lengths.
int rank(std::span<const IntVector> vectors);

/// rank(basis ∪ {v}) == rank(basis).
bool in_span(const IntVector& v, std::span<const IntVector> basis);

}  // namespace lumpex
