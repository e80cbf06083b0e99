#pragma once

// Sphere-geometry analysis over a finite vector sample: pairwise distance
// matrices, the three-way unit-distance coloring, exact monochromatic clique
// search, separation staircases, and property probes whose verdicts are
// either exact or certified-conservative (an interval too wide to decide is
// reported as unresolved, never guessed).

#include "adlab/extraction.hpp"

#include <string>
#include <vector>

namespace adlab {

struct DistanceMatrix {
  NormKind norm = NormKind::sup;
  TNormParams params;
  // n x n, symmetric, diagonal exactly 0
  std::vector<std::vector<NormValue>> entries;

  std::size_t size() const { return entries.size(); }
};

// All pairwise distances of the set's entries under the given norm.
// Entries must share one shape (plain, normalized, or symbolic).
DistanceMatrix distance_matrix(const VectorSet& vs, NormKind norm,
                               const TNormParams& p);

// Pair color against the unit threshold: minus when certainly below 1, zero
// when exactly 1, plus when certainly above, unresolved when the interval
// straddles 1. Exact entries are never unresolved.
enum class PairColor { minus, zero, plus, unresolved };

struct PairColoring {
  // n x n, symmetric; diagonal is minus (distance 0)
  std::vector<std::vector<PairColor>> colors;

  std::size_t size() const { return colors.size(); }
};

PairColoring classify_pairs(const DistanceMatrix& m);

// Maximum set of indices whose pairs all carry the requested color,
// by exact branch-and-bound. Unresolved pairs join no clique, and
// requesting the unresolved color itself is an error.
std::vector<std::size_t> max_clique(const PairColoring& c, PairColor color);

// Separation staircase: for each achievable clique size s >= 2, the largest
// lower bound d such that some s-subset is pairwise d-separated (by lower
// evidence). Nonincreasing in s; empty when there are no pairs.
struct KottmanStep {
  std::size_t size;
  Rat bound;
};

std::vector<KottmanStep> kottman_estimate(const VectorSet& vs, NormKind norm,
                                          const TNormParams& p);

// Two-radii comparison on sample pairs with both norms inside [a, b],
// 0 < a <= b < 1: checks ||x - x'|| <= b*||x/||x|| - x'/||x'|||| + (b - a).
// Exact in the sup norm; interval-sound in the T norm (a pair whose
// enclosures cannot decide is counted inconclusive, never guessed).
struct SpheresReport {
  std::size_t confirmed = 0;
  std::size_t violated = 0;
  std::size_t inconclusive = 0;
  std::string first_issue;  // first non-confirmed pair, empty when clean

  bool all_confirmed() const { return violated == 0 && inconclusive == 0; }
};

SpheresReport spheres_inequality_check(
    const std::vector<std::pair<XAVector, XAVector>>& pairs, const Rat& a,
    const Rat& b, NormKind norm, const TNormParams& p);

// Checks sup <= lower(T) and upper(T) <= (1 + sqrt(2))*sup + tol on every
// sample, using a rational lower bound for sqrt(2) so a pass is conservative.
// Reports the largest observed upper(T)/sup ratio. Zero vectors are rejected.
struct EquivalenceReport {
  bool ok = true;
  std::size_t checked = 0;
  Rat max_ratio;         // largest upper(T)/sup seen
  Rat certified_bound;   // the rational multiplier actually used
  std::string detail;    // first failing sample, empty when ok
};

EquivalenceReport norm_equivalence_check(const std::vector<XAVector>& samples,
                                         const TNormParams& p);

// Probes strict convexity on the sample's non-parallel pairs plus one
// constructed seed pair. Sup mode looks for an exact additive-equality
// witness ||u + v|| = ||u|| + ||v|| (the sup norm is expected to yield one);
// T mode certifies a strict gap beyond 4*tol per pair or reports it
// inconclusive, never a violation. Zero vectors are rejected.
struct ConvexityReport {
  bool witness_found = false;   // sup: some pair attains additive equality
  bool seed_witness = false;    // the constructed seed pair did
  bool sample_witness = false;  // some sample pair did
  std::size_t witness_i = 0, witness_j = 0;  // set when sample_witness
  std::size_t strict_pairs = 0;        // T: certified strictly convex pairs
  std::size_t inconclusive_pairs = 0;  // T: enclosures too wide to decide
  std::size_t skipped_parallel = 0;    // pairs u = lambda*v, excluded
};

ConvexityReport strict_convexity_probe(const std::vector<XAVector>& vectors,
                                       NormKind norm, const TNormParams& p);

}  // namespace adlab
