#include "adlab/xa_vector.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace adlab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

// Collects supp(g_u) u supp(g_v) and the pairwise intersections of every pair
// of distinct sets appearing in either vector. Beyond these indices each
// ground point lies in at most one of the participating sets.
std::vector<GroundIndex> joint_exceptional_set(const XAVector& u, const XAVector& v) {
  const ADFamily& fam = *u.family();
  std::set<GroundIndex> pts;
  for (const auto& [n, q] : u.g()) pts.insert(n);
  for (const auto& [n, q] : v.g()) pts.insert(n);
  std::vector<SetId> ids;
  for (const auto& t : u.terms()) ids.push_back(t.set);
  for (const auto& t : v.terms()) ids.push_back(t.set);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      for (GroundIndex n : intersect(fam.set(ids[i]), fam.set(ids[j]))) pts.insert(n);
  return {pts.begin(), pts.end()};
}

Rat abs_coefficient_sum(const XAVector& v) {
  Rat s(0);
  for (const auto& t : v.terms()) s += rat_abs(t.q);
  return s;
}

std::optional<GroundIndex> max_g_index(const XAVector& v) {
  if (v.g().empty()) return std::nullopt;
  return v.g().rbegin()->first;
}

Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;  // powers of a canonical fraction stay canonical
}

// Smallest D >= min_depth with q_bound^2 * base^{D+1} / (1 - base) <= tail_cap.
GroundIndex geometric_depth(const Rat& q_bound, const Rat& base, const Rat& tail_cap,
                            GroundIndex min_depth) {
  GroundIndex d = min_depth;
  Rat bound = q_bound * q_bound * rat_pow(base, static_cast<unsigned long>(d) + 1) /
              (Rat(1) - base);
  while (bound > tail_cap) {
    ++d;
    bound *= base;
    if (d > 100000) throw PipelineError("truncation depth runaway");
  }
  return d;
}

}  // namespace

XAVector XAVector::make(FamilyPtr family, std::map<GroundIndex, Rat> g,
                        std::vector<Term> terms) {
  require(family != nullptr, "vector requires a family");
  XAVector v;
  v.family_ = std::move(family);
  for (auto it = g.begin(); it != g.end();) {
    if (it->second == 0)
      it = g.erase(it);
    else
      ++it;
  }
  v.g_ = std::move(g);
  std::map<SetId, Rat> merged;
  for (auto& t : terms) {
    require(t.set < v.family_->size(), "term refers to a set outside the family");
    merged[t.set] += t.q;
  }
  for (auto& [id, q] : merged)
    if (q != 0) v.terms_.push_back(Term{std::move(q), id});
  return v;
}

Rat XAVector::coefficient(SetId set) const {
  for (const auto& t : terms_)
    if (t.set == set) return t.q;
  return Rat(0);
}

Rat eval_at(const XAVector& v, GroundIndex n) {
  Rat val(0);
  auto it = v.g().find(n);
  if (it != v.g().end()) val = it->second;
  for (const auto& t : v.terms())
    if (v.family()->set(t.set).contains(n)) val += t.q;
  return val;
}

XAVector linear_combine(const std::vector<Rat>& coeffs,
                        const std::vector<XAVector>& vectors) {
  require(!vectors.empty(), "linear_combine needs at least one vector");
  require(coeffs.size() == vectors.size(),
          "coefficient count must match vector count");
  FamilyPtr fam = vectors.front().family();
  for (const auto& v : vectors)
    require(v.family() == fam, "vectors belong to different families");
  std::map<GroundIndex, Rat> g;
  std::vector<Term> terms;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    for (const auto& [n, q] : vectors[k].g()) g[n] += coeffs[k] * q;
    for (const auto& t : vectors[k].terms())
      terms.push_back(Term{coeffs[k] * t.q, t.set});
  }
  return XAVector::make(std::move(fam), std::move(g), std::move(terms));
}

std::vector<GroundIndex> exceptional_set(const XAVector& v) {
  return joint_exceptional_set(v, v);
}

Rat sup_norm(const XAVector& v) {
  Rat best(0);
  for (const auto& t : v.terms()) best = std::max(best, rat_abs(t.q));
  for (GroundIndex n : exceptional_set(v)) best = std::max(best, rat_abs(eval_at(v, n)));
  return best;
}

Rat tail_limit(const XAVector& v, SetId set) {
  require(set < v.family()->size(), "set id outside the family");
  return v.coefficient(set);
}

void TNormParams::validate() const {
  if (base <= 0 || base >= 1) throw InputError("T norm base must lie in (0, 1)");
  if (tol <= 0) throw InputError("tolerance must be positive");
}

Rat t_partial_sum(const XAVector& v, const TNormParams& p, GroundIndex depth) {
  p.validate();
  Rat sum(0);
  Rat pw(1);  // base^n
  // Evaluation is only interesting where the vector can be nonzero, but the
  // loop is cheap for the depths this module produces.
  for (GroundIndex n = 0; n <= depth; ++n) {
    Rat val = eval_at(v, n);
    if (val != 0) sum += val * val * pw;
    pw *= p.base;
  }
  return sum;
}

GroundIndex truncation_depth(const XAVector& v, const TNormParams& p, const Rat& tol) {
  p.validate();
  if (tol <= 0) throw InputError("tolerance must be positive");
  GroundIndex min_depth = max_g_index(v).value_or(0);
  Rat q_bound = abs_coefficient_sum(v);
  if (q_bound == 0) return min_depth;
  Rat half = tol / 2;
  return geometric_depth(q_bound, p.base, half * half, min_depth);
}

QInterval t_seminorm(const XAVector& v, const TNormParams& p) {
  p.validate();
  if (v.is_zero()) return QInterval::point(Rat(0));
  GroundIndex depth = truncation_depth(v, p, p.tol);
  Rat sum = t_partial_sum(v, p, depth);
  Rat q_bound = abs_coefficient_sum(v);
  Rat tail(0);
  if (q_bound != 0) {
    Rat half = p.tol / 2;
    tail = half * half;  // geometric bound guaranteed by truncation_depth
  }
  return sqrt_enclosure(QInterval(sum, sum + tail), p.tol / 2);
}

QInterval t_norm(const XAVector& v, const TNormParams& p) {
  QInterval semi = t_seminorm(v, p);
  Rat sup = sup_norm(v);
  return QInterval(sup + semi.lo, sup + semi.hi);
}

ScaledXAVector t_normalize(const XAVector& v, const TNormParams& p) {
  p.validate();
  require(!v.is_zero(), "cannot normalize the zero vector");
  Rat sup = sup_norm(v);
  // The norm is at least sup, so a width of tol*sup/4 keeps the relative
  // error of the reciprocal under tol/2 regardless of the vector's size.
  TNormParams inner = p;
  inner.tol = std::min(p.tol, Rat(1)) * sup / 4;
  QInterval n = t_norm(v, inner);
  return ScaledXAVector{v, interval_reciprocal(n), p};
}

QInterval t_norm(const ScaledXAVector& v, const TNormParams& p) {
  p.validate();
  if (v.params.base != p.base)
    throw InputError("normalized vector carries a different T norm base");
  Rat sup = sup_norm(v.base_vec);
  TNormParams inner = p;
  inner.tol = std::min(p.tol, Rat(1)) * sup / 4;
  // One fresh enclosure [a, b] of the base norm bounds the quotient from both
  // sides: the true value N/N = 1 sits inside [a/b, b/a], and the relative
  // width stays under p.tol because b - a <= tol * sup / 4 <= tol * N / 4.
  QInterval n = t_norm(v.base_vec, inner);
  return interval_reciprocal(n) * n;
}

QInterval sup_norm_enclosure(const ScaledXAVector& v) {
  return v.scale * sup_norm(v.base_vec);
}

namespace {

struct ScaledPair {
  const XAVector* u;
  const XAVector* v;
  QInterval su;  // scalar enclosure applied to u
  QInterval sv;  // scalar enclosure applied to v

  QInterval value_at(GroundIndex n) const {
    return su * eval_at(*u, n) - sv * eval_at(*v, n);
  }
};

// Enclosure of the sup norm of su*u - sv*v: max over the joint exceptional
// set and the per-set difference coefficients.
QInterval scaled_sup_distance(const ScaledPair& d) {
  std::vector<QInterval> cands;
  cands.push_back(QInterval::point(Rat(0)));
  std::vector<SetId> ids;
  for (const auto& t : d.u->terms()) ids.push_back(t.set);
  for (const auto& t : d.v->terms()) ids.push_back(t.set);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (SetId id : ids)
    cands.push_back(interval_abs(d.su * d.u->coefficient(id) - d.sv * d.v->coefficient(id)));
  for (GroundIndex n : joint_exceptional_set(*d.u, *d.v))
    cands.push_back(interval_abs(d.value_at(n)));
  return interval_max(cands);
}

// Enclosure of ||T(su*u - sv*v)||_2 within width ~tol.
QInterval scaled_t_seminorm(const ScaledPair& d, const TNormParams& p, const Rat& tol) {
  Rat q_bound = rat_abs(d.su.hi) * abs_coefficient_sum(*d.u) +
                rat_abs(d.sv.hi) * abs_coefficient_sum(*d.v);
  GroundIndex min_depth =
      std::max(max_g_index(*d.u).value_or(0), max_g_index(*d.v).value_or(0));
  Rat half = tol / 2;
  GroundIndex depth = min_depth;
  Rat tail(0);
  if (q_bound != 0) {
    depth = geometric_depth(q_bound, p.base, half * half, min_depth);
    tail = half * half;
  }
  QInterval sum = QInterval::point(Rat(0));
  Rat pw(1);
  for (GroundIndex n = 0; n <= depth; ++n) {
    QInterval val = d.value_at(n);
    if (!(val.lo == 0 && val.hi == 0)) sum = sum + interval_sqr(val) * pw;
    pw *= p.base;
  }
  return sqrt_enclosure(QInterval(sum.lo, sum.hi + tail), tol / 2);
}

}  // namespace

NormValue distance(const XAVector& u, const XAVector& v, NormKind kind,
                   const TNormParams& p) {
  require(u.family() == v.family(), "vectors belong to different families");
  XAVector diff = subtract(u, v);
  if (kind == NormKind::sup) return NormValue::exact_value(sup_norm(diff));
  return NormValue::interval(t_norm(diff, p));
}

NormValue distance(const ScaledXAVector& u, const ScaledXAVector& v,
                   NormKind kind, const TNormParams& p) {
  require(u.base_vec.family() == v.base_vec.family(),
          "vectors belong to different families");
  require(u.params.base == v.params.base && u.params.base == p.base,
          "normalized vectors carry a different T norm base");
  p.validate();
  Rat inner = p.tol / 8;
  for (int round = 0; round < 64; ++round) {
    TNormParams q = p;
    q.tol = inner;
    ScaledPair d{&u.base_vec, &v.base_vec, t_normalize(u.base_vec, q).scale,
                 t_normalize(v.base_vec, q).scale};
    QInterval result = scaled_sup_distance(d);
    if (kind == NormKind::t) result = result + scaled_t_seminorm(d, p, inner);
    if (result.width() <= p.tol) return NormValue::interval(result);
    inner /= 8;  // every enclosure above shrinks with the working tolerance
  }
  throw PipelineError("distance enclosure failed to converge");
}

QInterval t_image_distance(const ScaledXAVector& u, const ScaledXAVector& v,
                           const TNormParams& p) {
  require(u.base_vec.family() == v.base_vec.family(),
          "vectors belong to different families");
  require(u.params.base == v.params.base && u.params.base == p.base,
          "normalized vectors carry a different T norm base");
  p.validate();
  Rat inner = p.tol / 4;
  for (int round = 0; round < 64; ++round) {
    TNormParams q = p;
    q.tol = inner;
    ScaledPair d{&u.base_vec, &v.base_vec, t_normalize(u.base_vec, q).scale,
                 t_normalize(v.base_vec, q).scale};
    QInterval result = scaled_t_seminorm(d, p, inner);
    if (result.width() <= p.tol) return result;
    inner /= 8;
  }
  throw PipelineError("image distance enclosure failed to converge");
}

XAVector round_coefficients(const XAVector& v, const Rat& eps) {
  if (eps <= 0) throw InputError("eps must be positive");
  Rat grid = eps / 3;
  std::vector<Term> terms;
  for (const auto& t : v.terms()) {
    Rat q = round_to_grid(t.q, grid);
    if (q != 0) terms.push_back(Term{q, t.set});
  }
  // Re-fit the finitely supported part where sets overlap: rounding each
  // coefficient separately can drift by the sum of the per-term errors at a
  // shared point, so the residual there is absorbed into g before rounding.
  XAVector rounded_terms = XAVector::make(v.family(), {}, terms);
  std::map<GroundIndex, Rat> g;
  for (GroundIndex n : exceptional_set(v)) {
    Rat residual = eval_at(v, n) - eval_at(rounded_terms, n);
    Rat q = round_to_grid(residual, grid);
    if (q != 0) g[n] = q;
  }
  XAVector out = XAVector::make(v.family(), std::move(g), std::move(terms));
  if (sup_norm(subtract(v, out)) > eps / 3)
    throw PipelineError("rounding exceeded its error budget");
  return out;
}

XAVector sample_vector(FamilyPtr family, std::size_t max_terms,
                       std::size_t max_support, SplitMix64& rng) {
  require(family != nullptr, "sampling requires a family");
  require(max_terms >= 1, "max_terms must be at least 1");
  require(family->size() >= 1, "sampling requires a nonempty family");
  auto small_rational = [&rng](bool allow_zero) {
    long num = static_cast<long>(rng.next_in(1, 4));
    if (rng.next_bool()) num = -num;
    if (allow_zero && rng.next_below(5) == 0) num = 0;
    Rat q(num, static_cast<long>(rng.next_in(1, 4)));
    q.canonicalize();
    return q;
  };
  std::size_t want = 1 + static_cast<std::size_t>(
                             rng.next_below(std::min<std::uint64_t>(max_terms, family->size())));
  std::set<SetId> picked;
  while (picked.size() < want)
    picked.insert(static_cast<SetId>(rng.next_below(family->size())));
  std::vector<Term> terms;
  for (SetId id : picked) terms.push_back(Term{small_rational(false), id});
  std::map<GroundIndex, Rat> g;
  if (max_support > 0) {
    std::size_t spots = static_cast<std::size_t>(rng.next_below(max_support + 1));
    for (std::size_t i = 0; i < spots; ++i) {
      Rat q = small_rational(true);
      if (q != 0) g[rng.next_below(64)] = q;
    }
  }
  return XAVector::make(std::move(family), std::move(g), std::move(terms));
}

XAVector sample_sup_sphere(FamilyPtr family, std::size_t max_terms,
                           std::size_t max_support, SplitMix64& rng) {
  XAVector v = sample_vector(std::move(family), max_terms, max_support, rng);
  return scale(v, Rat(1) / sup_norm(v));
}

ScaledXAVector sample_t_sphere(FamilyPtr family, std::size_t max_terms,
                               std::size_t max_support, SplitMix64& rng,
                               const TNormParams& p) {
  return t_normalize(sample_sup_sphere(std::move(family), max_terms, max_support, rng), p);
}

}  // namespace adlab
