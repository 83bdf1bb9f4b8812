#pragma once

#include <gmpxx.h>

#include <vector>

#include "spunfib/skeleton.hpp"

namespace spunfib {

// Rank of an integer matrix (rows x cols), exact fraction-free elimination.
int integer_rank(std::vector<std::vector<mpz_class>> m);

// First Betti number of the underlying compact manifold.  Ideal vertices are
// truncated to their links, so the complex is the compact manifold with its
// cusp tori as boundary.
int first_betti(const Skeleton& sk);

} // namespace spunfib
