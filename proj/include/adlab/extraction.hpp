#pragma once

// Finite extraction pipelines: each takes a finite sample of sphere vectors
// (or a family plus a recipe for building them) and produces a selected index
// set gamma together with a machine-checkable certificate. Every selection
// step is a finite pigeonhole, an exact sunflower extraction, or an exact
// clique search; every piece of evidence is an exact rational or a certified
// interval, recomputable from the referenced vectors alone.

#include "adlab/adfamily.hpp"
#include "adlab/xa_vector.hpp"

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace adlab {

enum class ClaimType { concentrated, equilateral, separated };

struct Claim {
  ClaimType type;
  Rat value;           // distance bound (concentrated/separated) or the common r
  bool strict = false;  // separated only: lower evidence must exceed value
};

struct PairEvidence {
  std::size_t i, j;  // indices into the accompanying vector set, i < j
  NormValue value;
};

struct Provenance {
  std::string pipeline;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> stage_log;  // one line per selection stage with counts
};

struct Certificate {
  Claim claim;
  NormKind norm = NormKind::sup;
  TNormParams params;
  std::vector<std::size_t> gamma;      // sorted indices into the vector set
  std::vector<PairEvidence> evidence;  // every pair of gamma once, (i, j) ascending
  Provenance provenance;
};

// Infinite-support sphere vector used by the Riesz-style pipeline: value 1 on
// the member set, -1/(n+1) elsewhere. Kept symbolic; evaluated on demand.
struct RieszVector {
  SetId set;
};

Rat riesz_eval(const ADFamily& fam, const RieszVector& v, GroundIndex n);
Rat riesz_sup_norm(const ADFamily& fam, const RieszVector& v);
// Exact: 1 + 1/(m+1) where m is the least point in the symmetric difference.
Rat riesz_distance(const ADFamily& fam, const RieszVector& a, const RieszVector& b);

// A certificate's companion data: the vectors its indices refer to.
using VectorEntry = std::variant<XAVector, ScaledXAVector, RieszVector>;

struct VectorSet {
  FamilyPtr family;
  NormKind norm = NormKind::sup;
  TNormParams params;
  std::vector<VectorEntry> entries;
};

// ---- sunflower extraction ----

struct DeltaSystem {
  std::vector<GroundIndex> root;
  std::vector<std::size_t> indices;  // sorted; pairwise intersections == root
};

// Largest sub-collection whose pairwise intersections all equal one root.
// Exact: every candidate root is some pairwise intersection; clique search
// settles each candidate. target only signals the caller's wish; the largest
// achievable sub-collection is returned regardless.
DeltaSystem delta_system_extract(const std::vector<std::vector<GroundIndex>>& sets,
                                 std::size_t target);

// ---- interval refinement over branch families ----

struct IntervalSystem {
  std::vector<QInterval> intervals;             // pairwise disjoint, open interiors
  std::vector<std::vector<GroundIndex>> trims;  // common trim per coordinate
  unsigned level = 0;                           // dyadic refinement depth reached
};

struct RefineResult {
  std::vector<std::size_t> kept;  // indices into the tuple list
  IntervalSystem system;
};

// Clusters tuple limit points by dyadic grid refinement until the coordinate
// cells separate, trims each set minimally so its tail maps into its own
// interval, stabilizes the trim vectors, and keeps a subfamily whose
// cross-tuple, cross-coordinate intersections all land inside fbound
// (certified by direct check; a conflict means dropping a tuple).
// Preconditions: branch family; tuples of equal size with pairwise disjoint
// id sets; intra-tuple pairwise intersections already inside fbound.
RefineResult lemma_ad_refine(const ADFamily& fam,
                             const std::vector<std::vector<SetId>>& tuples,
                             const std::vector<GroundIndex>& fbound);

// ---- concentration pipelines ----

// Sup-norm concentration over a branch family: round coefficients to the
// (eps/3) grid, pigeonhole shapes, extract a sunflower of term-id sets, align
// the shared positions, refine the disjoint parts, stabilize values on the
// overlap cover, then certify every pair at exact distance <= 1 + eps
// (<= 2*eps/3 when the rounded vectors collapse to one). gamma is never empty.
Certificate concentrate_sup(const std::vector<XAVector>& vectors, const Rat& eps);

// Greedy ball covering on the weighted-image distances: returns the largest
// ball (radius eps/2 around one of the points, by interval upper bounds), so
// members are pairwise within eps via the center. Ties to the lower index.
std::vector<std::size_t> separable_cluster(const std::vector<ScaledXAVector>& points,
                                           const Rat& eps, const TNormParams& p);

struct ReductionParams {
  Rat q, a, b, eps, delta;
  static ReductionParams from_q(const Rat& q);  // a = q-(1-q)/4, b = q,
                                                // eps = (1-q)/(4q), delta = (1-q)/4
};

std::vector<Rat> default_q_grid();

// T-norm concentration: band the vectors by certified sup-norm enclosures
// strictly inside (a, b), sup-normalize the band exactly, run concentrate_sup
// with the band's eps, transfer the bound back through the two-radii sphere
// inequality, cluster the weighted images within delta, and certify every
// pair at <= 1 - delta. The transfer is exact: b(1+eps) + (b-a) + delta
// equals 1 - delta on the nose, so no tolerance slack enters the claim.
Certificate reduce_concentrate_T(const std::vector<ScaledXAVector>& vectors,
                                 const std::vector<Rat>& q_grid,
                                 const TNormParams& p);

// ---- staged-family pipelines ----

// One vector per pair: f = 1_{A_first} - 1_{A_second}, an exact sup-unit.
XAVector pair_difference_vector(FamilyPtr fam, SetId first, SetId second);

struct EquilateralResult {
  Certificate cert;
  std::vector<XAVector> vectors;  // one per input pair, index-aligned
};

// Pairs must be strictly ordered: first < second within a pair and each
// pair's ids above the previous pair's. Stabilizes the within-pair
// intersection cover F, sets k = max(F)+1, colors pair-of-pairs 1 when the
// cross intersection tops k and the maximum is a clean witness (absent from
// both partner sets), then takes an exact maximum 1-clique. Every kept pair
// is certified at exact distance 2. On failure (no 1-clique of size 2) the
// error carries the largest 0-colored chain as a diagnostic.
EquilateralResult luzin_equilateral(FamilyPtr fam,
                                    const std::vector<std::pair<SetId, SetId>>& pairs);

struct SeparatedTResult {
  Certificate cert;
  std::vector<ScaledXAVector> vectors;  // normalized, one per input pair
};

// Runs luzin_equilateral, checks the image smallness condition
// upper(||T(f_a - f_b)||) <= 1/3 on every kept pair, normalizes in the T
// norm, and certifies every kept pair's lower distance evidence >= 3/2.
SeparatedTResult luzin_separated_T(FamilyPtr fam,
                                   const std::vector<std::pair<SetId, SetId>>& pairs,
                                   const TNormParams& p);

// ---- derived constructions ----

struct TerenziResult {
  Certificate cert;
  std::vector<XAVector> vectors;  // (y0 - yi)/r for i >= 1
};

// Turns an r-equilateral list into a 1-equilateral list on the unit sphere.
// Exact sup-norm arithmetic only; the T norm offers no exact equilateral
// evidence to transport, so it is rejected.
TerenziResult terenzi_unit_sphere(const std::vector<XAVector>& vectors, NormKind norm);

struct RieszResult {
  Certificate cert;
  std::vector<RieszVector> vectors;
};

// First `count` family sets as symbolic sphere vectors; every pair strictly
// separated beyond 1, with the exact value 1 + 1/(m+1) as evidence.
RieszResult riesz_separated(FamilyPtr fam, std::size_t count);

// Distance between two entries of a vector set under the given norm.
// Entries must have the same shape (plain, normalized, or symbolic); symbolic
// vectors carry only sup evidence. Throws InputError otherwise.
NormValue pair_distance(const VectorSet& vs, std::size_t i, std::size_t j,
                        NormKind norm, const TNormParams& p);

// ---- certificate checking ----

struct VerifyReport {
  bool ok = true;
  std::string detail;  // first failure, empty when ok
};

// Structural checks (gamma sorted and in range, evidence covers each gamma
// pair exactly once), then per pair: recompute the distance from the vectors
// at half tolerance, require consistency with the stored evidence (exact
// equality for exact values, overlap for intervals) and that both stored and
// recomputed evidence satisfy the claim. Pipelines whose bound rests on an
// analytic transfer record its ingredients in the provenance parameters, and
// the recheck reapplies the same transfer.
VerifyReport verify_certificate(const Certificate& cert, const VectorSet& vs);

}  // namespace adlab
