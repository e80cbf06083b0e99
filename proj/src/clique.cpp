#include "adlab/clique.hpp"

#include "adlab/rational.hpp"

#include <algorithm>
#include <cstdint>

namespace adlab {

namespace {

struct Solver {
  std::size_t n;
  const std::vector<std::vector<bool>>* adj;
  std::vector<std::size_t> best;
  std::vector<std::size_t> current;

  // Greedy coloring of cand (in order): color[i] is the 1-based class of
  // cand[i]; vertices of one class are pairwise non-adjacent, so a clique
  // meets each class at most once and max color bounds the clique size.
  void color_sort(std::vector<std::size_t>& cand, std::vector<std::size_t>& color) {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : cand) {
      std::size_t k = 0;
      while (k < classes.size()) {
        bool clash = false;
        for (std::size_t u : classes[k])
          if ((*adj)[u][v]) {
            clash = true;
            break;
          }
        if (!clash) break;
        ++k;
      }
      if (k == classes.size()) classes.emplace_back();
      classes[k].push_back(v);
    }
    cand.clear();
    color.clear();
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (std::size_t v : classes[k]) {
        cand.push_back(v);
        color.push_back(k + 1);
      }
  }

  void expand(std::vector<std::size_t> cand) {
    if (cand.empty()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    std::vector<std::size_t> color;
    color_sort(cand, color);
    // Iterate from the highest color down; once the bound fails for one
    // vertex it fails for all earlier ones too.
    for (std::size_t idx = cand.size(); idx-- > 0;) {
      if (current.size() + color[idx] <= best.size()) return;
      std::size_t v = cand[idx];
      current.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t pos = 0; pos < idx; ++pos)
        if ((*adj)[cand[pos]][v]) next.push_back(cand[pos]);
      expand(std::move(next));
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<std::size_t> max_clique_exact(const std::vector<std::vector<bool>>& adj) {
  std::size_t n = adj.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].size() != n) throw InputError("adjacency matrix not square");
    if (adj[i][i]) throw InputError("adjacency diagonal must be empty");
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j] != adj[j][i]) throw InputError("adjacency matrix not symmetric");
  }
  Solver s;
  s.n = n;
  s.adj = &adj;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  s.expand(std::move(all));
  std::sort(s.best.begin(), s.best.end());
  return s.best;
}

}  // namespace adlab
