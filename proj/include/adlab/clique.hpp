#pragma once

// Exact maximum clique. Branch and bound with greedy-coloring upper bounds;
// intended for a few hundred vertices. The result is deterministic for a
// fixed adjacency matrix (vertices explored in index order).

#include <cstddef>
#include <vector>

namespace adlab {

// adj must be symmetric with a false diagonal.
std::vector<std::size_t> max_clique_exact(const std::vector<std::vector<bool>>& adj);

}  // namespace adlab
