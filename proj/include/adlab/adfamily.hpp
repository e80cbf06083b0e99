#pragma once

// Almost-disjoint families of infinite subsets of N (indices from 0): any two
// distinct member sets have finite intersection, computed exactly.
//
// Two representations are materialized:
//
//  * Branch sets. For a non-dyadic rational x in (0,1), the set collects the
//    codes of all finite prefixes of x's binary expansion, with the prefix s
//    (|s| = l >= 1) coded as enc(s) = 2^l - 1 + value(s). Distinct generators
//    meet exactly in the codes of their common prefixes, so the intersection
//    size equals the length of the longest common prefix. The decoding map
//    phi sends enc(s) to the dyadic rational 0.s1, and phi-images of a branch
//    set converge to its generator.
//
//  * Staged sets ("luzin" kind). m sets are built in stages; stage a commits
//    one fresh element from each earlier set's tail (strictly increasing
//    within the stage) and then claims a private arithmetic tail with residue
//    a mod m beyond its commitments. Pairwise intersections are exactly the
//    recorded selections, which makes them singletons.

#include "adlab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace adlab {

using GroundIndex = std::uint64_t;
using SetId = std::uint32_t;

// Codes the length-l prefix with integer value v; grows as 2^l, so depth is
// capped at 62 to keep ground indices in uint64 range.
GroundIndex prefix_code(unsigned l, GroundIndex value);

// Decoding map on codes: phi(enc(s)) = 0.s1 as an exact dyadic rational.
// Injective on n >= 1; phi(0) is defined as 0 and never the image of a code.
Rat phi(GroundIndex n);

struct BranchRep {
  Rat x;  // non-dyadic, 0 < x < 1
};

struct LuzinRep {
  std::vector<GroundIndex> committed;  // ascending, globally fresh selections
  GroundIndex tail_offset = 0;         // exceeds max(committed); >= family floor
  GroundIndex tail_modulus = 1;
};

class ADSet {
 public:
  SetId id = 0;
  std::variant<BranchRep, LuzinRep> rep;

  bool contains(GroundIndex n) const;

  // Least member that is >= n. Cheap: O(log) for both representations.
  GroundIndex first_element_at_or_above(GroundIndex n) const;

  GroundIndex least_element() const { return first_element_at_or_above(0); }

  // Ascending members up to and including bound.
  std::vector<GroundIndex> elements_up_to(GroundIndex bound) const;

  // Least member of *this that is not a member of other (exists whenever the
  // two sets are distinct members of one family; the search is bounded by the
  // finite intersection).
  GroundIndex least_element_not_in(const ADSet& other) const;

  bool is_branch() const { return std::holds_alternative<BranchRep>(rep); }
};

enum class FamilyKind { branch, luzin };

struct LuzinSelection {
  SetId from;          // earlier set the element was taken from
  GroundIndex element; // member of that set's tail, globally fresh
};

class ADFamily {
 public:
  FamilyKind kind = FamilyKind::branch;
  std::vector<ADSet> sets;
  // Staged construction record: selections[a] lists stage a's commitments in
  // enumeration order (so element values strictly increase along each entry).
  std::vector<std::vector<LuzinSelection>> selections;
  GroundIndex floor = 0;    // luzin: minimum allowed element
  std::uint64_t seed = 0;   // seed the family was generated from (0 if explicit)

  std::size_t size() const { return sets.size(); }
  const ADSet& set(SetId id) const;
};

// Validates: each x non-dyadic, strictly between 0 and 1, pairwise distinct.
ADFamily build_branch_family(const std::vector<Rat>& xs);

// Convenience: deterministically samples `count` distinct admissible
// generators from the seed (odd denominators <= 999).
ADFamily build_random_branch_family(std::size_t count, std::uint64_t seed);

// Builds m staged sets with all elements >= min_element. The selection record
// is retained on the result for replay and audit.
ADFamily build_luzin_family(std::size_t m, GroundIndex min_element, std::uint64_t seed);

// Exact finite intersection of two distinct member sets, ascending.
// Same-set input is an error (the intersection would be the set itself).
std::vector<GroundIndex> intersect(const ADSet& a, const ADSet& b);

// The generator of a branch set: the limit of phi over the set's elements,
// with |phi(enc(x restricted to l)) - x| <= 2^-l at every depth.
Rat phi_limit(const ADFamily& family, SetId id);

struct LuzinStageReport {
  SetId stage = 0;
  std::size_t low_pairs = 0;  // |{b < a : max(A_a cap A_b) <= k}|
  std::size_t bound = 0;      // k + 1
  bool ok = true;
};

struct LuzinCheckReport {
  bool ok = true;
  GroundIndex k = 0;
  std::vector<LuzinStageReport> stages;
};

// Finite-to-one witness check at level k: for every stage a, at most k+1
// earlier sets meet A_a only below or at k.
LuzinCheckReport check_luzin_property(const ADFamily& family, GroundIndex k);

struct AlmostDisjointReport {
  bool ok = true;                 // intersections computed and finite
  std::size_t max_intersection = 0;
  SetId worst_a = 0, worst_b = 0; // a pair attaining max_intersection
};

AlmostDisjointReport check_almost_disjoint(const ADFamily& family);

}  // namespace adlab
