#pragma once

#include <string>

#include "spunfib/triangulation.hpp"

namespace spunfib {

// Canonical form of a connected triangulation: the lexicographically least
// BFS gluing-table encoding over all (base tetrahedron, base labelling) pairs.
std::string canonical_form(const Triangulation& tri);

bool is_isomorphic(const Triangulation& a, const Triangulation& b);

} // namespace spunfib
