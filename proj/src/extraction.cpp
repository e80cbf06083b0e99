#include "adlab/extraction.hpp"

#include "adlab/clique.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace adlab {

namespace {

void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

bool sorted_contains(const std::vector<GroundIndex>& xs, GroundIndex v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

bool subset_of_sorted(const std::vector<GroundIndex>& a, const std::vector<GroundIndex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<GroundIndex> sorted_intersection(const std::vector<GroundIndex>& a,
                                             const std::vector<GroundIndex>& b) {
  std::vector<GroundIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string index_list(const std::vector<GroundIndex>& xs) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i];
  }
  os << "]";
  return os.str();
}

std::string count_line(const std::string& stage, std::size_t classes, std::size_t in,
                       std::size_t out) {
  std::ostringstream os;
  os << stage << ": " << classes << " classes, kept " << out << " of " << in;
  return os.str();
}

const Rat& branch_real(const ADFamily& fam, SetId id) {
  return std::get<BranchRep>(fam.set(id).rep).x;
}

// All evidence pairs for a sorted gamma, (i, j) ascending.
template <typename Dist>
std::vector<PairEvidence> gamma_evidence(const std::vector<std::size_t>& gamma, Dist dist) {
  std::vector<PairEvidence> out;
  for (std::size_t a = 0; a < gamma.size(); ++a)
    for (std::size_t b = a + 1; b < gamma.size(); ++b)
      out.push_back(PairEvidence{gamma[a], gamma[b], dist(gamma[a], gamma[b])});
  return out;
}

}  // namespace

// ---- symbolic Riesz-style vectors ----

Rat riesz_eval(const ADFamily& fam, const RieszVector& v, GroundIndex n) {
  if (fam.set(v.set).contains(n)) return Rat(1);
  Rat r(-1);
  r /= Rat(Int(n) + 1);
  return r;
}

Rat riesz_sup_norm(const ADFamily& fam, const RieszVector& v) {
  // The tail value on the member set is 1; off the set the corrections are
  // -1/(n+1), never exceeding 1 in magnitude. The supremum is exactly 1.
  (void)fam;
  (void)v;
  return Rat(1);
}

Rat riesz_distance(const ADFamily& fam, const RieszVector& a, const RieszVector& b) {
  if (a.set == b.set) return Rat(0);
  // |f_A - f_B| is 1 + 1/(n+1) on the symmetric difference and 0 elsewhere,
  // so the sup sits at the least point of the symmetric difference.
  GroundIndex m1 = fam.set(a.set).least_element_not_in(fam.set(b.set));
  GroundIndex m2 = fam.set(b.set).least_element_not_in(fam.set(a.set));
  GroundIndex m = std::min(m1, m2);
  return Rat(1) + Rat(1) / Rat(Int(m) + 1);
}

// ---- sunflower extraction ----

DeltaSystem delta_system_extract(const std::vector<std::vector<GroundIndex>>& sets,
                                 std::size_t target) {
  require_input(target <= sets.size(), "target exceeds the number of sets");
  std::size_t n = sets.size();
  if (n == 0) return {};
  std::vector<std::vector<GroundIndex>> norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    norm[i] = sets[i];
    std::sort(norm[i].begin(), norm[i].end());
    norm[i].erase(std::unique(norm[i].begin(), norm[i].end()), norm[i].end());
  }
  DeltaSystem best{norm[0], {0}};
  if (n == 1) return best;
  std::set<std::vector<GroundIndex>> candidates;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      candidates.insert(sorted_intersection(norm[i], norm[j]));
  for (const auto& root : candidates) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (subset_of_sorted(root, norm[i])) members.push_back(i);
    std::vector<std::vector<bool>> adj(members.size(),
                                       std::vector<bool>(members.size(), false));
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (sorted_intersection(norm[members[a]], norm[members[b]]) == root)
          adj[a][b] = adj[b][a] = true;
    std::vector<std::size_t> clique = max_clique_exact(adj);
    if (clique.size() > best.indices.size()) {
      best.root = root;
      best.indices.clear();
      for (std::size_t pos : clique) best.indices.push_back(members[pos]);
      std::sort(best.indices.begin(), best.indices.end());
    }
  }
  return best;
}

// ---- interval refinement ----

RefineResult lemma_ad_refine(const ADFamily& fam,
                             const std::vector<std::vector<SetId>>& tuples,
                             const std::vector<GroundIndex>& fbound_in) {
  require_input(fam.kind == FamilyKind::branch,
                "interval refinement needs a branch family");
  require_input(!tuples.empty(), "no tuples given");
  std::size_t k = tuples[0].size();
  require_input(k >= 1, "tuples must have at least one coordinate");
  std::vector<GroundIndex> fbound = fbound_in;
  std::sort(fbound.begin(), fbound.end());
  fbound.erase(std::unique(fbound.begin(), fbound.end()), fbound.end());

  std::set<SetId> seen;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    require_input(tuples[t].size() == k, "tuples differ in size");
    for (SetId id : tuples[t]) {
      require_input(id < fam.size(), "tuple refers to a set outside the family");
      require_input(seen.insert(id).second,
                    "set " + std::to_string(id) + " appears in two tuples");
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        auto inter = intersect(fam.set(tuples[t][i]), fam.set(tuples[t][j]));
        if (!subset_of_sorted(inter, fbound))
          throw InputError("tuple " + std::to_string(t) + " sets " +
                           std::to_string(tuples[t][i]) + "," +
                           std::to_string(tuples[t][j]) +
                           " intersect outside the bound set");
      }
  }

  std::vector<std::size_t> all(tuples.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  if (k == 1) {
    // a single coordinate has no cross-coordinate pairs to control
    IntervalSystem sys;
    sys.intervals.push_back(QInterval(Rat(0), Rat(1)));
    sys.trims.push_back({});
    sys.level = 0;
    return RefineResult{all, sys};
  }

  // dyadic refinement: shrink to the most populated cell until the k
  // coordinate cells are pairwise separated (gap of at least one cell)
  std::vector<std::size_t> cluster = all;
  unsigned level = 0;
  Int pow2(1);
  std::vector<Int> chosen_cell;
  for (unsigned t = 1;; ++t) {
    if (t > 512) throw PipelineError("refinement failed to separate coordinates");
    pow2 *= 2;
    std::map<std::vector<Int>, std::vector<std::size_t>> cells;
    for (std::size_t idx : cluster) {
      std::vector<Int> key(k);
      for (std::size_t i = 0; i < k; ++i)
        key[i] = rat_floor(branch_real(fam, tuples[idx][i]) * Rat(pow2));
      cells[key].push_back(idx);
    }
    auto best = cells.begin();
    for (auto it = cells.begin(); it != cells.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    cluster = best->second;
    bool separated = true;
    for (std::size_t i = 0; i < k && separated; ++i)
      for (std::size_t j = i + 1; j < k && separated; ++j) {
        Int d = best->first[i] - best->first[j];
        if (d < 0) d = -d;
        if (d < 2) separated = false;
      }
    if (separated) {
      chosen_cell = best->first;
      level = t;
      break;
    }
  }

  IntervalSystem sys;
  sys.level = level;
  for (std::size_t i = 0; i < k; ++i)
    sys.intervals.push_back(
        QInterval(Rat(chosen_cell[i]) / Rat(pow2), Rat(chosen_cell[i] + 1) / Rat(pow2)));

  // minimal trims: the elements whose code value falls outside the open cell
  auto trim_of = [&](SetId id, const QInterval& iv) {
    std::vector<GroundIndex> f;
    for (GroundIndex n :
         fam.set(id).elements_up_to(std::numeric_limits<GroundIndex>::max())) {
      Rat val = phi(n);
      if (!(iv.lo < val && val < iv.hi)) f.push_back(n);
    }
    return f;
  };
  std::map<std::vector<std::vector<GroundIndex>>, std::vector<std::size_t>> classes;
  for (std::size_t idx : cluster) {
    std::vector<std::vector<GroundIndex>> key(k);
    for (std::size_t i = 0; i < k; ++i) key[i] = trim_of(tuples[idx][i], sys.intervals[i]);
    classes[key].push_back(idx);
  }
  auto best_class = classes.begin();
  for (auto it = classes.begin(); it != classes.end(); ++it)
    if (it->second.size() > best_class->second.size()) best_class = it;
  sys.trims = best_class->first;
  std::vector<std::size_t> stable = best_class->second;

  // direct certification: drop tuples until every cross-tuple,
  // cross-coordinate intersection lies inside fbound
  std::vector<std::vector<bool>> ok(stable.size(), std::vector<bool>(stable.size(), false));
  for (std::size_t a = 0; a < stable.size(); ++a)
    for (std::size_t b = a + 1; b < stable.size(); ++b) {
      bool fine = true;
      for (std::size_t i = 0; i < k && fine; ++i)
        for (std::size_t j = 0; j < k && fine; ++j) {
          if (i == j) continue;
          auto inter =
              intersect(fam.set(tuples[stable[a]][i]), fam.set(tuples[stable[b]][j]));
          if (!subset_of_sorted(inter, fbound)) fine = false;
        }
      ok[a][b] = ok[b][a] = fine;
    }
  std::vector<std::size_t> clique = max_clique_exact(ok);
  std::vector<std::size_t> kept;
  for (std::size_t pos : clique) kept.push_back(stable[pos]);
  std::sort(kept.begin(), kept.end());
  return RefineResult{kept, sys};
}

// ---- sup-norm concentration ----

Certificate concentrate_sup(const std::vector<XAVector>& vectors, const Rat& eps) {
  require_input(!vectors.empty(), "empty input");
  require_input(eps > 0, "eps must be positive");
  FamilyPtr fam = vectors[0].family();
  require_input(fam->kind == FamilyKind::branch,
                "sup concentration needs a branch family");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_input(vectors[i].family() == fam, "vectors belong to different families");
    require_input(sup_norm(vectors[i]) == 1,
                  "vector " + std::to_string(i) + " is not on the unit sphere");
  }
  std::size_t n = vectors.size();
  Certificate cert;
  cert.norm = NormKind::sup;
  cert.provenance.pipeline = "concentrate-sup";
  cert.provenance.parameters["eps"] = rat_to_string(eps);
  cert.provenance.parameters["grid"] = rat_to_string(eps / 3);
  auto& log = cert.provenance.stage_log;
  log.push_back("input: " + std::to_string(n) + " vectors, eps " + rat_to_string(eps));

  std::vector<XAVector> rounded;
  rounded.reserve(n);
  for (const auto& v : vectors) rounded.push_back(round_coefficients(v, eps));

  // shape: identical finitely supported part and identical coefficient
  // sequence in the order of the sets' limit reals
  auto x_order_terms = [&](const XAVector& r) {
    std::vector<std::pair<Rat, Term>> ts;
    for (const auto& t : r.terms()) ts.push_back({branch_real(*fam, t.set), t});
    std::sort(ts.begin(), ts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return ts;
  };
  using ShapeKey = std::pair<std::vector<std::pair<GroundIndex, Rat>>, std::vector<Rat>>;
  std::map<ShapeKey, std::vector<std::size_t>> shapes;
  for (std::size_t i = 0; i < n; ++i) {
    ShapeKey key;
    for (const auto& [idx, val] : rounded[i].g()) key.first.push_back({idx, val});
    for (const auto& [x, t] : x_order_terms(rounded[i])) key.second.push_back(t.q);
    shapes[key].push_back(i);
  }
  auto shape_it = shapes.begin();
  for (auto it = shapes.begin(); it != shapes.end(); ++it)
    if (it->second.size() > shape_it->second.size()) shape_it = it;
  std::vector<std::size_t> members = shape_it->second;
  log.push_back(count_line("shape", shapes.size(), n, members.size()));
  {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < shape_it->first.second.size(); ++i) {
      if (i) os << ",";
      os << rat_to_string(shape_it->first.second[i]);
    }
    os << "]";
    cert.provenance.parameters["coefficients"] = os.str();
    std::ostringstream gs;
    gs << "[";
    for (std::size_t i = 0; i < shape_it->first.first.size(); ++i) {
      if (i) gs << ",";
      gs << "[" << shape_it->first.first[i].first << ","
         << rat_to_string(shape_it->first.first[i].second) << "]";
    }
    gs << "]";
    cert.provenance.parameters["g"] = gs.str();
  }
  std::size_t k = shape_it->first.second.size();

  // sunflower on the term id sets
  std::vector<std::vector<GroundIndex>> idsets;
  for (std::size_t m : members) {
    std::vector<GroundIndex> ids;
    for (const auto& t : rounded[m].terms()) ids.push_back(t.set);
    std::sort(ids.begin(), ids.end());
    idsets.push_back(ids);
  }
  DeltaSystem ds = delta_system_extract(idsets, idsets.size());
  std::vector<std::size_t> members2;
  for (std::size_t pos : ds.indices) members2.push_back(members[pos]);
  log.push_back("sunflower: root size " + std::to_string(ds.root.size()) + ", kept " +
                std::to_string(members2.size()) + " of " + std::to_string(members.size()));
  cert.provenance.parameters["root"] = index_list(ds.root);

  // align the shared ids by their position in the real-ordered tuple
  std::map<std::vector<std::pair<std::size_t, GroundIndex>>, std::vector<std::size_t>>
      aligns;
  for (std::size_t m : members2) {
    std::vector<std::pair<std::size_t, GroundIndex>> key;
    auto ts = x_order_terms(rounded[m]);
    for (std::size_t pos = 0; pos < ts.size(); ++pos)
      if (sorted_contains(ds.root, ts[pos].second.set)) key.push_back({pos, ts[pos].second.set});
    aligns[key].push_back(m);
  }
  auto align_it = aligns.begin();
  for (auto it = aligns.begin(); it != aligns.end(); ++it)
    if (it->second.size() > align_it->second.size()) align_it = it;
  std::vector<std::size_t> members3 = align_it->second;
  log.push_back(count_line("align", aligns.size(), members2.size(), members3.size()));
  {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < align_it->first.size(); ++i) {
      if (i) os << ",";
      os << align_it->first[i].first;
    }
    os << "]";
    cert.provenance.parameters["positions"] = os.str();
  }

  bool collapse = align_it->first.size() == k;
  std::vector<std::size_t> final_members;
  if (collapse) {
    // identical rounded vectors: the shared part is everything
    final_members = members3;
    log.push_back("collapse: rounded vectors identical, kept " +
                  std::to_string(final_members.size()));
    cert.claim = Claim{ClaimType::concentrated, Rat(2) * eps / 3, false};
  } else {
    // overlap cover: the finitely supported part plus every within-tuple
    // pairwise intersection of the kept members
    std::set<GroundIndex> cover;
    for (const auto& [idx, val] : shape_it->first.first) cover.insert(idx);
    for (std::size_t m : members3) {
      const auto& ts = rounded[m].terms();
      for (std::size_t a = 0; a < ts.size(); ++a)
        for (std::size_t b = a + 1; b < ts.size(); ++b)
          for (GroundIndex x : intersect(fam->set(ts[a].set), fam->set(ts[b].set)))
            cover.insert(x);
    }
    std::vector<GroundIndex> fbound(cover.begin(), cover.end());
    cert.provenance.parameters["fbound"] = index_list(fbound);

    // refine the disjoint parts
    std::vector<std::vector<SetId>> tuples;
    for (std::size_t m : members3) {
      std::vector<SetId> tup;
      for (const auto& [x, t] : x_order_terms(rounded[m]))
        if (!sorted_contains(ds.root, t.set)) tup.push_back(t.set);
      tuples.push_back(tup);
    }
    RefineResult rr = lemma_ad_refine(*fam, tuples, fbound);
    std::vector<std::size_t> members4;
    for (std::size_t pos : rr.kept) members4.push_back(members3[pos]);
    log.push_back("refine: level " + std::to_string(rr.system.level) + ", kept " +
                  std::to_string(members4.size()) + " of " +
                  std::to_string(members3.size()));
    cert.provenance.parameters["level"] = std::to_string(rr.system.level);

    // stabilize the values on the cover
    std::map<std::vector<Rat>, std::vector<std::size_t>> values;
    for (std::size_t m : members4) {
      std::vector<Rat> key;
      for (GroundIndex x : fbound) key.push_back(eval_at(rounded[m], x));
      values[key].push_back(m);
    }
    auto val_it = values.begin();
    for (auto it = values.begin(); it != values.end(); ++it)
      if (it->second.size() > val_it->second.size()) val_it = it;
    final_members = val_it->second;
    log.push_back(count_line("values", values.size(), members4.size(), final_members.size()));
    cert.claim = Claim{ClaimType::concentrated, Rat(1) + eps, false};
  }

  std::sort(final_members.begin(), final_members.end());
  cert.gamma = final_members;
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    NormValue d = distance(vectors[i], vectors[j], NormKind::sup);
    if (d.hi > cert.claim.value)
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " exceeds the certified bound");
    return d;
  });
  log.push_back("evidence: " + std::to_string(cert.evidence.size()) + " pairs, bound " +
                rat_to_string(cert.claim.value));
  return cert;
}

// ---- weighted-image clustering ----

std::vector<std::size_t> separable_cluster(const std::vector<ScaledXAVector>& points,
                                           const Rat& eps, const TNormParams& p) {
  require_input(eps > 0, "eps must be positive");
  std::size_t n = points.size();
  if (n == 0) return {};
  Rat radius = eps / 2;
  // pairwise image-distance upper bounds, computed once
  std::vector<std::vector<Rat>> hi(n, std::vector<Rat>(n, Rat(0)));
  TNormParams q = p;
  Rat quarter = radius / 4;
  q.tol = std::min(p.tol, quarter);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QInterval d = t_image_distance(points[i], points[j], q);
      hi[i][j] = hi[j][i] = d.hi;
    }
  std::vector<std::size_t> best;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> ball;
    for (std::size_t j = 0; j < n; ++j)
      if (j == c || hi[c][j] <= radius) ball.push_back(j);
    if (ball.size() > best.size()) best = ball;
  }
  return best;
}

// ---- T-norm concentration ----

ReductionParams ReductionParams::from_q(const Rat& q) {
  require_input(q > 0 && q < 1, "q must lie in (0, 1)");
  ReductionParams r;
  r.q = q;
  r.b = q;
  r.a = q - (Rat(1) - q) / 4;
  r.eps = (Rat(1) - q) / (4 * q);
  r.delta = (Rat(1) - q) / 4;
  require_input(r.a > 0, "q too small: the band would touch zero");
  return r;
}

std::vector<Rat> default_q_grid() {
  auto rq = [](long a, long b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
  };
  return {rq(1, 2), rq(3, 5), rq(2, 3), rq(3, 4), rq(4, 5), rq(9, 10)};
}

Certificate reduce_concentrate_T(const std::vector<ScaledXAVector>& vectors,
                                 const std::vector<Rat>& q_grid,
                                 const TNormParams& p) {
  require_input(!vectors.empty(), "empty input");
  require_input(!q_grid.empty(), "empty q grid");
  p.validate();
  FamilyPtr fam = vectors[0].base_vec.family();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_input(vectors[i].base_vec.family() == fam,
                  "vectors belong to different families");
    require_input(vectors[i].params.base == p.base,
                  "vector " + std::to_string(i) + " carries a different T norm base");
    // the ideal quotient is unit by construction; what can go wrong is the
    // cached scale, so check it against a fresh enclosure of the base norm
    QInterval fresh = t_norm(vectors[i].base_vec, p);
    if (!(vectors[i].scale * fresh).contains(Rat(1)))
      throw InputError("vector " + std::to_string(i) +
                       " carries a scale inconsistent with its base norm");
  }

  Certificate cert;
  cert.norm = NormKind::t;
  cert.params = p;
  cert.provenance.pipeline = "reduce-concentrate-t";
  auto& log = cert.provenance.stage_log;
  log.push_back("input: " + std::to_string(vectors.size()) + " vectors");

  // certified band assignment: the sup norm enclosure must sit strictly
  // inside (a, b); stragglers get one re-measurement at a finer tolerance
  std::vector<Rat> grid = q_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::size_t> band;
  ReductionParams rp;
  bool found = false;
  for (const Rat& q : grid) {
    ReductionParams cand = ReductionParams::from_q(q);
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      QInterval e = sup_norm_enclosure(vectors[i]);
      if (!(e.lo > cand.a && e.hi < cand.b) && e.hi > cand.a && e.lo < cand.b) {
        TNormParams fine = p;
        fine.tol = p.tol / 256;
        e = sup_norm_enclosure(t_normalize(vectors[i].base_vec, fine));
      }
      if (e.lo > cand.a && e.hi < cand.b) in.push_back(i);
    }
    log.push_back("band q=" + rat_to_string(q) + ": " + std::to_string(in.size()) +
                  " vectors");
    if (in.size() > band.size()) {
      band = in;
      rp = cand;
      found = true;
    }
  }
  if (!found || band.size() < 2)
    throw PipelineError("no band captures two vectors");
  log.push_back("band chosen: q=" + rat_to_string(rp.q) + ", " +
                std::to_string(band.size()) + " vectors");
  cert.provenance.parameters["q"] = rat_to_string(rp.q);
  cert.provenance.parameters["a"] = rat_to_string(rp.a);
  cert.provenance.parameters["b"] = rat_to_string(rp.b);
  cert.provenance.parameters["eps"] = rat_to_string(rp.eps);
  cert.provenance.parameters["delta"] = rat_to_string(rp.delta);
  cert.provenance.parameters["slack"] = "0";

  // exact sup-normalization: the T scale cancels out of base/sup(base)
  std::vector<XAVector> sup_unit;
  for (std::size_t i : band)
    sup_unit.push_back(scale(vectors[i].base_vec, Rat(1) / sup_norm(vectors[i].base_vec)));
  Certificate inner = concentrate_sup(sup_unit, rp.eps);
  for (const auto& line : inner.provenance.stage_log) log.push_back("sup " + line);
  std::vector<std::size_t> gamma1;
  for (std::size_t pos : inner.gamma) gamma1.push_back(band[pos]);

  // cluster the weighted images within delta
  std::vector<ScaledXAVector> g1;
  for (std::size_t i : gamma1) g1.push_back(vectors[i]);
  std::vector<std::size_t> cluster = separable_cluster(g1, rp.delta, p);
  std::vector<std::size_t> gamma;
  for (std::size_t pos : cluster) gamma.push_back(gamma1[pos]);
  std::sort(gamma.begin(), gamma.end());
  log.push_back("cluster: kept " + std::to_string(gamma.size()) + " of " +
                std::to_string(gamma1.size()));
  if (gamma.size() < 2)
    throw PipelineError("concentration left fewer than two vectors");

  cert.gamma = gamma;
  cert.claim = Claim{ClaimType::concentrated, Rat(1) - rp.delta, false};
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    NormValue direct = distance(vectors[i], vectors[j], NormKind::t, p);
    XAVector xi = scale(vectors[i].base_vec, Rat(1) / sup_norm(vectors[i].base_vec));
    XAVector xj = scale(vectors[j].base_vec, Rat(1) / sup_norm(vectors[j].base_vec));
    Rat sup_d = sup_norm(subtract(xi, xj));
    if (sup_d > Rat(1) + rp.eps)
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " escapes the sup concentration bound");
    // two-radii transfer: ||y - y'|| <= b*||x - x'|| + (b - a), plus the
    // image-cluster radius; comes out <= 1 - delta exactly
    Rat analytic = rp.b * sup_d + (rp.b - rp.a) + rp.delta;
    NormValue out = direct;
    out.hi = std::min(direct.hi, analytic);
    if (out.hi > cert.claim.value)
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " exceeds the certified bound");
    return out;
  });
  log.push_back("evidence: " + std::to_string(cert.evidence.size()) + " pairs, bound " +
                rat_to_string(cert.claim.value));
  return cert;
}

// ---- staged-family pipelines ----

XAVector pair_difference_vector(FamilyPtr fam, SetId first, SetId second) {
  return XAVector::make(std::move(fam), {},
                        {Term{Rat(1), first}, Term{Rat(-1), second}});
}

namespace {

void validate_pair_order(const ADFamily& fam,
                         const std::vector<std::pair<SetId, SetId>>& pairs) {
  require_input(!pairs.empty(), "no pairs given");
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    require_input(pairs[t].first < fam.size() && pairs[t].second < fam.size(),
                  "pair " + std::to_string(t) + " refers outside the family");
    require_input(pairs[t].first < pairs[t].second,
                  "pair " + std::to_string(t) + " is not ascending");
    if (t > 0)
      require_input(pairs[t - 1].second < pairs[t].first,
                    "pair " + std::to_string(t) + " does not sit above pair " +
                        std::to_string(t - 1));
  }
}

}  // namespace

EquilateralResult luzin_equilateral(FamilyPtr fam,
                                    const std::vector<std::pair<SetId, SetId>>& pairs) {
  require_input(fam != nullptr, "missing family");
  validate_pair_order(*fam, pairs);
  std::size_t n = pairs.size();

  EquilateralResult res;
  for (const auto& [a, b] : pairs) res.vectors.push_back(pair_difference_vector(fam, a, b));
  Certificate& cert = res.cert;
  cert.norm = NormKind::sup;
  cert.claim = Claim{ClaimType::equilateral, Rat(2), false};
  cert.provenance.pipeline = "luzin-equilateral";
  auto& log = cert.provenance.stage_log;
  log.push_back("input: " + std::to_string(n) + " pairs");

  // stabilize the within-pair intersection cover
  std::map<std::vector<GroundIndex>, std::vector<std::size_t>> covers;
  for (std::size_t t = 0; t < n; ++t)
    covers[intersect(fam->set(pairs[t].first), fam->set(pairs[t].second))].push_back(t);
  auto best = covers.begin();
  for (auto it = covers.begin(); it != covers.end(); ++it) {
    bool better = it->second.size() > best->second.size();
    if (it->second.size() == best->second.size()) {
      // tie: anchor the threshold to the smallest cover maximum
      bool it_empty = it->first.empty(), best_empty = best->first.empty();
      if (it_empty != best_empty)
        better = it_empty;
      else if (!it_empty && it->first.back() < best->first.back())
        better = true;
    }
    if (better) best = it;
  }
  const std::vector<GroundIndex>& cover = best->first;
  GroundIndex k = cover.empty() ? 0 : cover.back() + 1;
  log.push_back(count_line("cover", covers.size(), n, n) + ", threshold " +
                std::to_string(k));
  cert.provenance.parameters["cover"] = index_list(cover);
  cert.provenance.parameters["threshold"] = std::to_string(k);

  if (n == 1) {
    cert.gamma = {0};
    log.push_back("single pair: trivially equilateral");
    return res;
  }

  // color a pair-of-pairs 1 when the later front set meets the earlier back
  // set above the threshold and the maximum is a clean witness
  std::vector<std::vector<bool>> one(n, std::vector<bool>(n, false));
  std::size_t ones = 0;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = b + 1; a < n; ++a) {
      auto cross = intersect(fam->set(pairs[a].first), fam->set(pairs[b].second));
      if (cross.empty()) continue;
      GroundIndex m = cross.back();
      if (m > k && !fam->set(pairs[a].second).contains(m) &&
          !fam->set(pairs[b].first).contains(m)) {
        one[a][b] = one[b][a] = true;
        ++ones;
      }
    }
  log.push_back("coloring: " + std::to_string(ones) + " of " +
                std::to_string(n * (n - 1) / 2) + " pairs colored 1");

  std::vector<std::size_t> gamma = max_clique_exact(one);
  if (gamma.size() < 2) {
    std::vector<std::vector<bool>> zero(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) zero[i][j] = !one[i][j];
    std::size_t chain = max_clique_exact(zero).size();
    throw PipelineError(
        "no 1-colored pair set of size 2; largest 0-colored chain has size " +
        std::to_string(chain));
  }
  std::sort(gamma.begin(), gamma.end());
  cert.gamma = gamma;
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    NormValue d = distance(res.vectors[i], res.vectors[j], NormKind::sup);
    if (!(d.exact && d.lo == 2))
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " is not at distance 2");
    return d;
  });
  log.push_back("clique: kept " + std::to_string(gamma.size()) + " of " +
                std::to_string(n));
  return res;
}

SeparatedTResult luzin_separated_T(FamilyPtr fam,
                                   const std::vector<std::pair<SetId, SetId>>& pairs,
                                   const TNormParams& p) {
  p.validate();
  EquilateralResult eq = luzin_equilateral(fam, pairs);

  // image smallness: every kept pair's difference must have a small image
  Rat third(1, 3);
  for (std::size_t a = 0; a < eq.cert.gamma.size(); ++a)
    for (std::size_t b = a + 1; b < eq.cert.gamma.size(); ++b) {
      std::size_t i = eq.cert.gamma[a], j = eq.cert.gamma[b];
      QInterval s = t_seminorm(subtract(eq.vectors[i], eq.vectors[j]), p);
      if (!(s.hi <= third))
        throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                            " has image seminorm in [" + rat_approx(s.lo) + "," +
                            rat_approx(s.hi) + "], above 1/3");
    }

  SeparatedTResult res;
  for (const auto& v : eq.vectors) res.vectors.push_back(t_normalize(v, p));
  Certificate& cert = res.cert;
  cert.claim = Claim{ClaimType::separated, Rat(3, 2), false};
  cert.norm = NormKind::t;
  cert.params = p;
  cert.gamma = eq.cert.gamma;
  cert.provenance.pipeline = "luzin-separated-t";
  cert.provenance.parameters = eq.cert.provenance.parameters;
  cert.provenance.stage_log = eq.cert.provenance.stage_log;
  cert.provenance.stage_log.push_back("image smallness verified on " +
                                      std::to_string(cert.gamma.size()) + " vectors");
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    NormValue d = distance(res.vectors[i], res.vectors[j], NormKind::t, p);
    if (!(d.lo >= cert.claim.value))
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " has lower evidence " + rat_approx(d.lo) + " below 3/2");
    return d;
  });
  cert.provenance.stage_log.push_back("evidence: " +
                                      std::to_string(cert.evidence.size()) +
                                      " pairs, lower bound 3/2");
  return res;
}

// ---- equilateral-to-unit-sphere transport ----

TerenziResult terenzi_unit_sphere(const std::vector<XAVector>& vectors, NormKind norm) {
  require_input(norm == NormKind::sup,
                "exact equilateral evidence requires the sup norm");
  require_input(vectors.size() >= 2, "need at least two vectors");
  FamilyPtr fam = vectors[0].family();
  for (const auto& v : vectors)
    require_input(v.family() == fam, "vectors belong to different families");
  Rat r = distance(vectors[0], vectors[1], NormKind::sup).lo;
  require_input(r > 0, "input vectors coincide");
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (distance(vectors[i], vectors[j], NormKind::sup).lo != r)
        throw InputError("input not equilateral: pair " + std::to_string(i) + "," +
                         std::to_string(j) + " differs from " + rat_to_string(r));

  TerenziResult res;
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    XAVector u = scale(subtract(vectors[0], vectors[i]), Rat(1) / r);
    if (sup_norm(u) != 1)
      throw PipelineError("output vector " + std::to_string(i - 1) +
                          " landed off the unit sphere");
    res.vectors.push_back(std::move(u));
  }
  Certificate& cert = res.cert;
  cert.norm = NormKind::sup;
  cert.claim = Claim{ClaimType::equilateral, Rat(1), false};
  cert.provenance.pipeline = "terenzi";
  cert.provenance.parameters["r"] = rat_to_string(r);
  cert.provenance.stage_log.push_back("input: " + std::to_string(vectors.size()) +
                                      " vectors at mutual distance " + rat_to_string(r));
  cert.gamma.resize(res.vectors.size());
  for (std::size_t i = 0; i < cert.gamma.size(); ++i) cert.gamma[i] = i;
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    NormValue d = distance(res.vectors[i], res.vectors[j], NormKind::sup);
    if (!(d.exact && d.lo == 1))
      throw PipelineError("output pair " + std::to_string(i) + "," +
                          std::to_string(j) + " is not at distance 1");
    return d;
  });
  cert.provenance.stage_log.push_back("output: " + std::to_string(res.vectors.size()) +
                                      " unit vectors, pairwise distance 1");
  return res;
}

// ---- strict separation from symbolic vectors ----

RieszResult riesz_separated(FamilyPtr fam, std::size_t count) {
  require_input(fam != nullptr, "missing family");
  require_input(count >= 1, "count must be at least 1");
  require_input(count <= fam->size(), "count exceeds the family size");
  RieszResult res;
  for (std::size_t i = 0; i < count; ++i) {
    RieszVector v{static_cast<SetId>(i)};
    if (riesz_sup_norm(*fam, v) != 1)
      throw PipelineError("vector " + std::to_string(i) + " is off the unit sphere");
    res.vectors.push_back(v);
  }
  Certificate& cert = res.cert;
  cert.norm = NormKind::sup;
  cert.claim = Claim{ClaimType::separated, Rat(1), true};
  cert.provenance.pipeline = "riesz";
  cert.provenance.parameters["count"] = std::to_string(count);
  cert.gamma.resize(count);
  for (std::size_t i = 0; i < count; ++i) cert.gamma[i] = i;
  cert.evidence = gamma_evidence(cert.gamma, [&](std::size_t i, std::size_t j) {
    Rat d = riesz_distance(*fam, res.vectors[i], res.vectors[j]);
    if (!(d > 1))
      throw PipelineError("pair " + std::to_string(i) + "," + std::to_string(j) +
                          " is not strictly separated");
    return NormValue::exact_value(d);
  });
  cert.provenance.stage_log.push_back("evidence: " + std::to_string(cert.evidence.size()) +
                                      " pairs, all strictly above 1");
  return res;
}

NormValue pair_distance(const VectorSet& vs, std::size_t i, std::size_t j,
                        NormKind norm, const TNormParams& p) {
  require_input(vs.family != nullptr, "vector set has no family");
  require_input(i < vs.entries.size() && j < vs.entries.size(),
                "entry index out of range");
  const VectorEntry& a = vs.entries[i];
  const VectorEntry& b = vs.entries[j];
  require_input(a.index() == b.index(), "entries " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " have different shapes");
  if (std::holds_alternative<RieszVector>(a)) {
    require_input(norm == NormKind::sup, "symbolic vectors carry only sup evidence");
    return NormValue::exact_value(
        riesz_distance(*vs.family, std::get<RieszVector>(a), std::get<RieszVector>(b)));
  }
  if (std::holds_alternative<XAVector>(a))
    return distance(std::get<XAVector>(a), std::get<XAVector>(b), norm, p);
  return distance(std::get<ScaledXAVector>(a), std::get<ScaledXAVector>(b), norm, p);
}

// ---- certificate checking ----

namespace {

bool claim_holds(const Claim& c, const NormValue& v) {
  switch (c.type) {
    case ClaimType::concentrated:
      return v.hi <= c.value;
    case ClaimType::equilateral:
      return v.exact && v.lo == c.value;
    case ClaimType::separated:
      return c.strict ? v.lo > c.value : v.lo >= c.value;
  }
  return false;
}

struct PairChecker {
  const Certificate* cert;
  const VectorSet* vs;
  TNormParams halved;

  NormValue recompute(std::size_t i, std::size_t j, std::string& err) const {
    try {
      return pair_distance(*vs, i, j, cert->norm, halved);
    } catch (const InputError& e) {
      err = e.what();
      return {};
    }
  }

  // The T-reduction's bound rests on an exact transfer recorded in the
  // provenance; reapply it so a fresh wide-but-sound interval cannot fail a
  // claim the certificate legitimately holds.
  NormValue apply_transfer(std::size_t i, std::size_t j, NormValue rec) const {
    if (cert->provenance.pipeline != "reduce-concentrate-t") return rec;
    auto it = cert->provenance.parameters.find("q");
    if (it == cert->provenance.parameters.end()) return rec;
    const VectorEntry& a = vs->entries[i];
    const VectorEntry& b = vs->entries[j];
    if (!std::holds_alternative<ScaledXAVector>(a) ||
        !std::holds_alternative<ScaledXAVector>(b))
      return rec;
    ReductionParams rp = ReductionParams::from_q(rat_from_string(it->second));
    const XAVector& ba = std::get<ScaledXAVector>(a).base_vec;
    const XAVector& bb = std::get<ScaledXAVector>(b).base_vec;
    XAVector xi = scale(ba, Rat(1) / sup_norm(ba));
    XAVector xj = scale(bb, Rat(1) / sup_norm(bb));
    Rat analytic = rp.b * sup_norm(subtract(xi, xj)) + (rp.b - rp.a) + rp.delta;
    rec.hi = std::min(rec.hi, analytic);
    if (rec.lo > rec.hi) rec.lo = rec.hi;
    return rec;
  }
};

}  // namespace

VerifyReport verify_certificate(const Certificate& cert, const VectorSet& vs) {
  auto fail = [](std::string d) { return VerifyReport{false, std::move(d)}; };
  if (vs.family == nullptr) return fail("vector set has no family");
  if (cert.norm != vs.norm) return fail("certificate and vector set norms differ");
  if (cert.norm == NormKind::t && cert.params.base != vs.params.base)
    return fail("certificate and vector set weight bases differ");
  for (std::size_t i = 0; i < cert.gamma.size(); ++i) {
    if (cert.gamma[i] >= vs.entries.size())
      return fail("gamma index " + std::to_string(cert.gamma[i]) + " out of range");
    if (i > 0 && cert.gamma[i - 1] >= cert.gamma[i])
      return fail("gamma is not strictly ascending");
  }
  std::set<std::pair<std::size_t, std::size_t>> wanted;
  for (std::size_t a = 0; a < cert.gamma.size(); ++a)
    for (std::size_t b = a + 1; b < cert.gamma.size(); ++b)
      wanted.insert({cert.gamma[a], cert.gamma[b]});
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& e : cert.evidence) {
    if (e.i >= e.j) return fail("evidence pair not ascending");
    if (!got.insert({e.i, e.j}).second) return fail("duplicate evidence pair");
  }
  if (got != wanted) return fail("evidence does not cover exactly the gamma pairs");

  PairChecker chk;
  chk.cert = &cert;
  chk.vs = &vs;
  chk.halved = cert.params;
  chk.halved.tol = cert.params.tol / 2;
  for (const auto& e : cert.evidence) {
    std::string pair_name = "pair " + std::to_string(e.i) + "," + std::to_string(e.j);
    if (e.value.lo > e.value.hi) return fail(pair_name + ": malformed evidence");
    if (!claim_holds(cert.claim, e.value))
      return fail(pair_name + ": stored evidence violates the claim");
    std::string err;
    NormValue rec = chk.recompute(e.i, e.j, err);
    if (!err.empty()) return fail(pair_name + ": " + err);
    if (e.value.exact) {
      if (!(rec.exact && rec.lo == e.value.lo))
        return fail(pair_name + ": recomputed value differs from stored exact value");
    } else {
      if (rec.hi < e.value.lo || rec.lo > e.value.hi)
        return fail(pair_name + ": recomputed interval misses the stored evidence");
    }
    NormValue checked = chk.apply_transfer(e.i, e.j, rec);
    if (!claim_holds(cert.claim, checked))
      return fail(pair_name + ": recomputed evidence violates the claim");
  }
  return {};
}

}  // namespace adlab
