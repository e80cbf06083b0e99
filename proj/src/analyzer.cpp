#include "adlab/analyzer.hpp"

#include "adlab/clique.hpp"

#include <algorithm>
#include <set>

namespace adlab {

namespace {

void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

// Canonical vectors are equal iff their parts are.
bool same_vector(const XAVector& u, const XAVector& v) {
  if (u.g() != v.g()) return false;
  if (u.terms().size() != v.terms().size()) return false;
  for (std::size_t i = 0; i < u.terms().size(); ++i)
    if (u.terms()[i].set != v.terms()[i].set || u.terms()[i].q != v.terms()[i].q)
      return false;
  return true;
}

// u == lambda * v for some rational lambda (v nonzero).
bool parallel_vectors(const XAVector& u, const XAVector& v) {
  Rat lambda;
  if (!v.g().empty()) {
    auto it = u.g().find(v.g().begin()->first);
    if (it == u.g().end()) return u.is_zero();
    lambda = it->second / v.g().begin()->second;
  } else if (!v.terms().empty()) {
    Rat qu = u.coefficient(v.terms()[0].set);
    if (qu == 0) return u.is_zero();
    lambda = qu / v.terms()[0].q;
  } else {
    return false;  // v is zero: nothing is a multiple of it here
  }
  return same_vector(u, scale(v, lambda));
}

}  // namespace

DistanceMatrix distance_matrix(const VectorSet& vs, NormKind norm,
                               const TNormParams& p) {
  DistanceMatrix m;
  m.norm = norm;
  m.params = p;
  std::size_t n = vs.entries.size();
  m.entries.assign(n, std::vector<NormValue>(n));
  for (std::size_t i = 0; i < n; ++i)
    m.entries[i][i] = NormValue::exact_value(Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      NormValue d = pair_distance(vs, i, j, norm, p);
      m.entries[i][j] = d;
      m.entries[j][i] = d;
    }
  return m;
}

PairColoring classify_pairs(const DistanceMatrix& m) {
  PairColoring c;
  std::size_t n = m.size();
  c.colors.assign(n, std::vector<PairColor>(n, PairColor::minus));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const NormValue& v = m.entries[i][j];
      PairColor col;
      if (v.hi < 1)
        col = PairColor::minus;
      else if (v.lo > 1)
        col = PairColor::plus;
      else if (v.lo == 1 && v.hi == 1)
        col = PairColor::zero;  // exact, or an interval pinched to the point 1
      else
        col = PairColor::unresolved;
      c.colors[i][j] = c.colors[j][i] = col;
    }
  return c;
}

std::vector<std::size_t> max_clique(const PairColoring& c, PairColor color) {
  require_input(color != PairColor::unresolved,
                "cannot build cliques over unresolved pairs");
  std::size_t n = c.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.colors[i][j] == color) adj[i][j] = adj[j][i] = true;
  return max_clique_exact(adj);
}

std::vector<KottmanStep> kottman_estimate(const VectorSet& vs, NormKind norm,
                                          const TNormParams& p) {
  DistanceMatrix m = distance_matrix(vs, norm, p);
  std::size_t n = m.size();
  std::set<Rat> levels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.entries[i][j].lo > 0) levels.insert(m.entries[i][j].lo);
  // sweep thresholds downward; the d-separated graph only gains edges, so
  // each clique size first appears at its best certified bound
  std::vector<KottmanStep> steps;
  std::size_t best_size = 1;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    const Rat& d = *it;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (m.entries[i][j].lo >= d) adj[i][j] = adj[j][i] = true;
    std::size_t sz = max_clique_exact(adj).size();
    for (std::size_t s = best_size + 1; s <= sz; ++s) steps.push_back({s, d});
    best_size = std::max(best_size, sz);
  }
  return steps;
}

SpheresReport spheres_inequality_check(
    const std::vector<std::pair<XAVector, XAVector>>& pairs, const Rat& a,
    const Rat& b, NormKind norm, const TNormParams& p) {
  require_input(0 < a && a <= b && b < 1, "need 0 < a <= b < 1");
  SpheresReport rep;
  auto issue = [&](std::size_t k, const std::string& what) {
    if (rep.first_issue.empty())
      rep.first_issue = "pair " + std::to_string(k) + ": " + what;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const XAVector& x = pairs[k].first;
    const XAVector& y = pairs[k].second;
    if (norm == NormKind::sup) {
      Rat nx = sup_norm(x), ny = sup_norm(y);
      require_input(a <= nx && nx <= b && a <= ny && ny <= b,
                    "pair " + std::to_string(k) + " has a norm outside [a, b]");
      Rat lhs = sup_norm(subtract(x, y));
      Rat dist =
          sup_norm(subtract(scale(x, Rat(1) / nx), scale(y, Rat(1) / ny)));
      if (lhs <= b * dist + (b - a)) {
        ++rep.confirmed;
      } else {
        ++rep.violated;
        issue(k, "exact violation");
      }
    } else {
      QInterval nx = t_norm(x, p), ny = t_norm(y, p);
      require_input(a <= nx.lo && nx.hi <= b && a <= ny.lo && ny.hi <= b,
                    "pair " + std::to_string(k) +
                        " has a norm not certified inside [a, b]");
      NormValue lhs = distance(x, y, NormKind::t, p);
      NormValue dist = distance(t_normalize(x, p), t_normalize(y, p), NormKind::t, p);
      if (lhs.hi <= b * dist.lo + (b - a)) {
        ++rep.confirmed;
      } else if (lhs.lo > b * dist.hi + (b - a)) {
        ++rep.violated;
        issue(k, "certified violation");
      } else {
        ++rep.inconclusive;
        issue(k, "enclosures too wide to decide");
      }
    }
  }
  return rep;
}

EquivalenceReport norm_equivalence_check(const std::vector<XAVector>& samples,
                                         const TNormParams& p) {
  EquivalenceReport rep;
  // rational stand-in for sqrt(2): a pass with the smaller multiplier implies
  // a pass with the true one
  Rat sqrt2_lo = sqrt_enclosure(Rat(2), Rat(1, 1000000000000)).lo;
  rep.certified_bound = Rat(1) + sqrt2_lo;
  rep.max_ratio = Rat(0);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    require_input(!samples[k].is_zero(),
                  "sample " + std::to_string(k) + " is zero; ratio undefined");
    Rat sup = sup_norm(samples[k]);
    QInterval t = t_norm(samples[k], p);
    Rat ratio = t.hi / sup;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    bool lower_ok = sup <= t.lo;
    bool upper_ok = t.hi <= rep.certified_bound * sup + p.tol;
    if (!(lower_ok && upper_ok)) {
      rep.ok = false;
      if (rep.detail.empty())
        rep.detail = "sample " + std::to_string(k) +
                     (lower_ok ? " exceeds the upper multiplier"
                               : " has T norm below its sup norm");
    }
    ++rep.checked;
  }
  return rep;
}

ConvexityReport strict_convexity_probe(const std::vector<XAVector>& vectors,
                                       NormKind norm, const TNormParams& p) {
  require_input(!vectors.empty(), "need at least one vector");
  FamilyPtr fam = vectors[0].family();
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    require_input(!vectors[k].is_zero(), "vector " + std::to_string(k) + " is zero");
    require_input(vectors[k].family() == fam, "vectors belong to different families");
  }
  ConvexityReport rep;

  auto sup_equality = [](const XAVector& u, const XAVector& v) {
    return sup_norm(linear_combine({Rat(1), Rat(1)}, {u, v})) ==
           sup_norm(u) + sup_norm(v);
  };

  if (norm == NormKind::sup) {
    // constructed seed: two indicators stacked on one set always attain
    // additive equality without being parallel
    if (fam->size() >= 2) {
      XAVector u = XAVector::indicator(fam, 0);
      XAVector v = linear_combine({Rat(1), Rat(1)},
                                  {XAVector::indicator(fam, 0),
                                   XAVector::indicator(fam, 1)});
      if (!parallel_vectors(u, v) && sup_equality(u, v)) {
        rep.seed_witness = true;
        rep.witness_found = true;
      }
    }
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = i + 1; j < vectors.size(); ++j) {
        if (parallel_vectors(vectors[i], vectors[j])) {
          ++rep.skipped_parallel;
          continue;
        }
        if (sup_equality(vectors[i], vectors[j]) && !rep.sample_witness) {
          rep.sample_witness = true;
          rep.witness_found = true;
          rep.witness_i = i;
          rep.witness_j = j;
        }
      }
  } else {
    Rat margin = 4 * p.tol;
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = i + 1; j < vectors.size(); ++j) {
        if (parallel_vectors(vectors[i], vectors[j])) {
          ++rep.skipped_parallel;
          continue;
        }
        QInterval sum = t_norm(linear_combine({Rat(1), Rat(1)},
                                              {vectors[i], vectors[j]}),
                               p);
        QInterval ni = t_norm(vectors[i], p), nj = t_norm(vectors[j], p);
        if (ni.lo + nj.lo - sum.hi > margin)
          ++rep.strict_pairs;
        else
          ++rep.inconclusive_pairs;
      }
  }
  return rep;
}

}  // namespace adlab
