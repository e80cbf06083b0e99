#pragma once

// Vectors of the sequence space generated by an almost-disjoint family: each
// is a finitely supported rational function g plus a rational combination of
// indicator functions of family sets, kept in canonical form (nonzero values,
// distinct sets, terms sorted by set id).
//
// The sup norm is computed exactly: outside the finite exceptional set
// (support of g plus all pairwise intersections of the participating sets)
// the function takes each term coefficient as a value infinitely often and
// nothing else, so the norm is a max over finitely many exact rationals.
//
// The T norm ||f|| = ||f||_inf + ||Tf||_2 weights coordinate n by
// w_n^2 = base^n (base in (0,1), default 1/2). Its square sum is enclosed by
// an exact partial sum plus a geometric tail bound, and the square root by a
// rational enclosure, giving an interval of width <= tol around the true
// value. Nothing irrational is ever evaluated.

#include "adlab/adfamily.hpp"
#include "adlab/interval.hpp"
#include "adlab/rng.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace adlab {

using FamilyPtr = std::shared_ptr<const ADFamily>;

struct Term {
  Rat q;      // nonzero
  SetId set;  // id within the family
};

class XAVector {
 public:
  XAVector() = default;

  // Canonicalizes: merges duplicate sets, drops zero coefficients and zero
  // g-entries, sorts terms by set id, validates ids against the family.
  static XAVector make(FamilyPtr family, std::map<GroundIndex, Rat> g,
                       std::vector<Term> terms);

  static XAVector zero(FamilyPtr family) { return make(std::move(family), {}, {}); }

  static XAVector indicator(FamilyPtr family, SetId set) {
    return make(std::move(family), {}, {Term{Rat(1), set}});
  }

  const FamilyPtr& family() const { return family_; }
  const std::map<GroundIndex, Rat>& g() const { return g_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return g_.empty() && terms_.empty(); }

  // Coefficient of the given set (0 when absent).
  Rat coefficient(SetId set) const;

 private:
  FamilyPtr family_;
  std::map<GroundIndex, Rat> g_;
  std::vector<Term> terms_;
};

// Exact pointwise evaluation.
Rat eval_at(const XAVector& v, GroundIndex n);

// Exact rational combination; vectors must share one family, coefficient list
// must match the vector list in length.
XAVector linear_combine(const std::vector<Rat>& coeffs,
                        const std::vector<XAVector>& vectors);

inline XAVector subtract(const XAVector& u, const XAVector& v) {
  return linear_combine({Rat(1), Rat(-1)}, {u, v});
}
inline XAVector scale(const XAVector& v, const Rat& c) {
  return linear_combine({c}, {v});
}

// supp(g) together with all pairwise intersections of the vector's sets;
// beyond it the vector's only values are its term coefficients and zero.
std::vector<GroundIndex> exceptional_set(const XAVector& v);

// Exact sup norm.
Rat sup_norm(const XAVector& v);

// The eventual value along a member set: the set's own coefficient.
// The id must belong to the vector's family.
Rat tail_limit(const XAVector& v, SetId set);

struct TNormParams {
  Rat base = Rat(1, 2);       // w_n^2 = base^n
  Rat tol = Rat(1, 1000000);  // width cap for certified intervals

  void validate() const;
};

// Exact value of sum_{n <= depth} f(n)^2 base^n.
Rat t_partial_sum(const XAVector& v, const TNormParams& p, GroundIndex depth);

// Depth D such that the geometric tail beyond D is at most (tol/2)^2 and D
// covers supp(g) (beyond which |f| <= sum of |coefficients| pointwise).
GroundIndex truncation_depth(const XAVector& v, const TNormParams& p, const Rat& tol);

// Certified enclosure of ||Tv||_2, width <= p.tol.
QInterval t_seminorm(const XAVector& v, const TNormParams& p);

// Certified enclosure of ||v||_T = ||v||_inf + ||Tv||_2, width <= p.tol.
QInterval t_norm(const XAVector& v, const TNormParams& p);

// base_vec / ||base_vec||_T represented symbolically: the ideal vector is the
// exact quotient; `scale` encloses the true scalar 1/||base_vec||_T and can be
// recomputed to any precision from base_vec, so derived quantities refine.
struct ScaledXAVector {
  XAVector base_vec;
  QInterval scale;
  TNormParams params;
};

// Requires v != 0. The result's T norm, recomputed at tolerance p.tol,
// lies within [1 - p.tol, 1 + p.tol].
ScaledXAVector t_normalize(const XAVector& v, const TNormParams& p);

// Enclosure of the scaled vector's T norm at tolerance p.tol (close to 1).
QInterval t_norm(const ScaledXAVector& v, const TNormParams& p);

// Enclosure of the scaled vector's sup norm: sup_norm(base) * scale.
QInterval sup_norm_enclosure(const ScaledXAVector& v);

enum class NormKind { sup, t };

// Exact rational for the sup norm, certified interval otherwise.
struct NormValue {
  bool exact = true;
  Rat lo, hi;

  static NormValue exact_value(Rat v) { return {true, v, v}; }
  static NormValue interval(QInterval i) { return {false, std::move(i.lo), std::move(i.hi)}; }
  QInterval as_interval() const { return QInterval(lo, hi); }
};

// Distance between plain vectors: exact for sup, interval of width <= p.tol
// for the T norm.
NormValue distance(const XAVector& u, const XAVector& v, NormKind kind,
                   const TNormParams& p = {});

// Distance between normalized vectors (the ideal quotients): certified
// interval of width <= p.tol for either norm; enclosures are refined
// internally until the requested width is met.
NormValue distance(const ScaledXAVector& u, const ScaledXAVector& v,
                   NormKind kind, const TNormParams& p = {});

// Enclosure of just the weighted-image part ||T(u - v)||_2 of the distance
// between normalized vectors, width <= p.tol.
QInterval t_image_distance(const ScaledXAVector& u, const ScaledXAVector& v,
                           const TNormParams& p = {});

// Rounds every term coefficient to the grid (eps/3)Z, then re-fits the
// finitely supported part on the exceptional set so that the certified exact
// sup distance to v is <= eps/3 (it comes out <= eps/6).
XAVector round_coefficients(const XAVector& v, const Rat& eps);

// Deterministic raw sample: 1..max_terms terms with small rational
// coefficients, up to max_support g-entries on [0, 64). Never zero.
XAVector sample_vector(FamilyPtr family, std::size_t max_terms,
                       std::size_t max_support, SplitMix64& rng);

// Exact unit sphere sample for the sup norm.
XAVector sample_sup_sphere(FamilyPtr family, std::size_t max_terms,
                           std::size_t max_support, SplitMix64& rng);

// Certified unit sphere sample for the T norm: sup-normalized first (exact),
// then T-normalized; its T norm at tolerance p.tol lies in [1-tol, 1+tol].
ScaledXAVector sample_t_sphere(FamilyPtr family, std::size_t max_terms,
                               std::size_t max_support, SplitMix64& rng,
                               const TNormParams& p);

}  // namespace adlab
