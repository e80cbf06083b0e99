#include "adlab/adfamily.hpp"

#include "adlab/rng.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace adlab {

namespace {

constexpr unsigned kMaxDepth = 62;  // keeps prefix codes inside uint64

// Integer value of the first l expansion bits of x in (0,1): floor(x * 2^l).
GroundIndex prefix_value(const Rat& x, unsigned l) {
  Int num = x.get_num();
  Int den = x.get_den();
  Int shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), num.get_mpz_t(), l);
  Int v;
  mpz_fdiv_q(v.get_mpz_t(), shifted.get_mpz_t(), den.get_mpz_t());
  return v.get_ui();
}

// Splits a code n >= 1 into prefix length and value.
void split_code(GroundIndex n, unsigned& l, GroundIndex& value) {
  GroundIndex np1 = n + 1;
  l = 63 - static_cast<unsigned>(__builtin_clzll(np1));
  value = np1 - (GroundIndex{1} << l);
}

const LuzinRep& as_luzin(const ADSet& s) {
  if (s.is_branch()) throw InputError("operation requires staged (luzin) sets");
  return std::get<LuzinRep>(s.rep);
}

bool tail_contains(const LuzinRep& r, GroundIndex n) {
  return n >= r.tail_offset && (n - r.tail_offset) % r.tail_modulus == 0;
}

bool same_representation(const ADSet& a, const ADSet& b) {
  if (a.is_branch() != b.is_branch()) return false;
  if (a.is_branch())
    return std::get<BranchRep>(a.rep).x == std::get<BranchRep>(b.rep).x;
  const auto& ra = std::get<LuzinRep>(a.rep);
  const auto& rb = std::get<LuzinRep>(b.rep);
  return ra.committed == rb.committed && ra.tail_offset == rb.tail_offset &&
         ra.tail_modulus == rb.tail_modulus;
}

}  // namespace

GroundIndex prefix_code(unsigned l, GroundIndex value) {
  if (l == 0 || l > kMaxDepth) throw InputError("prefix depth out of range");
  if (value >= (GroundIndex{1} << l)) throw InputError("prefix value too wide");
  return (GroundIndex{1} << l) - 1 + value;
}

Rat phi(GroundIndex n) {
  if (n == 0) return Rat(0);
  unsigned l;
  GroundIndex v;
  split_code(n, l, v);
  // 0.s1 = (2v + 1) / 2^(l+1)
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, l + 1);
  Rat r(Int(2 * v + 1), den);
  r.canonicalize();
  return r;
}

bool ADSet::contains(GroundIndex n) const {
  if (is_branch()) {
    if (n == 0) return false;
    unsigned l;
    GroundIndex v;
    split_code(n, l, v);
    if (l > kMaxDepth) return false;
    return prefix_value(std::get<BranchRep>(rep).x, l) == v;
  }
  const auto& r = std::get<LuzinRep>(rep);
  if (tail_contains(r, n)) return true;
  return std::binary_search(r.committed.begin(), r.committed.end(), n);
}

GroundIndex ADSet::first_element_at_or_above(GroundIndex n) const {
  if (is_branch()) {
    const Rat& x = std::get<BranchRep>(rep).x;
    for (unsigned l = 1; l <= kMaxDepth; ++l) {
      GroundIndex e = prefix_code(l, prefix_value(x, l));
      if (e >= n) return e;
    }
    throw InputError("branch element above depth cap");
  }
  const auto& r = std::get<LuzinRep>(rep);
  auto it = std::lower_bound(r.committed.begin(), r.committed.end(), n);
  GroundIndex tail = r.tail_offset;
  if (n > tail) {
    GroundIndex steps = (n - r.tail_offset + r.tail_modulus - 1) / r.tail_modulus;
    tail = r.tail_offset + steps * r.tail_modulus;
  }
  if (it != r.committed.end()) return std::min(*it, tail);
  return tail;
}

std::vector<GroundIndex> ADSet::elements_up_to(GroundIndex bound) const {
  std::vector<GroundIndex> out;
  GroundIndex n = 0;
  for (;;) {
    GroundIndex e;
    try {
      e = first_element_at_or_above(n);
    } catch (const InputError&) {
      break;  // branch depth cap reached past the bound
    }
    if (e > bound) break;
    out.push_back(e);
    n = e + 1;
  }
  return out;
}

GroundIndex ADSet::least_element_not_in(const ADSet& other) const {
  if (same_representation(*this, other))
    throw InputError("sets coincide: no element outside the other");
  GroundIndex e = least_element();
  // every skipped element lies in the (finite) intersection, so this ends
  while (other.contains(e)) e = first_element_at_or_above(e + 1);
  return e;
}

const ADSet& ADFamily::set(SetId id) const {
  if (id >= sets.size()) throw InputError("set id out of range");
  return sets[id];
}

ADFamily build_branch_family(const std::vector<Rat>& xs) {
  if (xs.empty()) throw InputError("branch family needs at least one generator");
  std::set<std::string> seen;
  ADFamily fam;
  fam.kind = FamilyKind::branch;
  for (const Rat& raw : xs) {
    Rat x(raw);
    x.canonicalize();
    if (x <= 0 || x >= 1) throw InputError("generator outside (0,1): " + rat_to_string(x));
    if (mpz_popcount(x.get_den().get_mpz_t()) == 1)
      throw InputError("dyadic generator not allowed: " + rat_to_string(x));
    if (!seen.insert(rat_to_string(x)).second)
      throw InputError("duplicate generator: " + rat_to_string(x));
    ADSet s;
    s.id = static_cast<SetId>(fam.sets.size());
    s.rep = BranchRep{x};
    fam.sets.push_back(std::move(s));
  }
  return fam;
}

ADFamily build_random_branch_family(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InputError("branch family needs at least one generator");
  SplitMix64 rng = SplitMix64(seed).split("branch-family");
  std::set<std::string> seen;
  std::vector<Rat> xs;
  while (xs.size() < count) {
    std::uint64_t den = 2 * rng.next_below(499) + 3;  // odd in [3, 999]
    std::uint64_t num = 1 + rng.next_below(den - 1);
    Rat x(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    x.canonicalize();
    if (seen.insert(rat_to_string(x)).second) xs.push_back(x);
  }
  ADFamily fam = build_branch_family(xs);
  fam.seed = seed;
  return fam;
}

ADFamily build_luzin_family(std::size_t m, GroundIndex min_element, std::uint64_t seed) {
  if (m == 0) throw InputError("staged family needs at least one set");
  ADFamily fam;
  fam.kind = FamilyKind::luzin;
  fam.floor = min_element;
  fam.seed = seed;
  SplitMix64 rng = SplitMix64(seed).split("luzin-build");
  std::set<GroundIndex> used;  // globally consumed tail elements

  auto fresh_tail_element = [&](const LuzinRep& tail_of, GroundIndex above) {
    GroundIndex start = std::max(tail_of.tail_offset, above);
    GroundIndex steps = 0;
    if (start > tail_of.tail_offset)
      steps = (start - tail_of.tail_offset + tail_of.tail_modulus - 1) / tail_of.tail_modulus;
    GroundIndex e = tail_of.tail_offset + steps * tail_of.tail_modulus;
    while (used.count(e)) e += tail_of.tail_modulus;
    // small seeded jitter: skip up to two additional fresh slots
    for (std::uint64_t skip = rng.next_below(3); skip > 0; --skip) {
      e += tail_of.tail_modulus;
      while (used.count(e)) e += tail_of.tail_modulus;
    }
    return e;
  };

  for (std::size_t alpha = 0; alpha < m; ++alpha) {
    std::vector<GroundIndex> committed;
    std::vector<LuzinSelection> record;
    GroundIndex prev_plus_1 = 0;  // next selection must be >= this
    for (std::size_t beta = 0; beta < alpha; ++beta) {
      const LuzinRep& rb = std::get<LuzinRep>(fam.sets[beta].rep);
      GroundIndex e = fresh_tail_element(rb, prev_plus_1);
      used.insert(e);
      committed.push_back(e);
      record.push_back(LuzinSelection{static_cast<SetId>(beta), e});
      prev_plus_1 = e + 1;
    }
    GroundIndex base = min_element;
    if (!committed.empty()) base = std::max(base, committed.back() + 1);
    GroundIndex rem = base % m;
    GroundIndex offset = base + (alpha >= rem ? alpha - rem : alpha + m - rem);
    ADSet s;
    s.id = static_cast<SetId>(alpha);
    s.rep = LuzinRep{std::move(committed), offset, static_cast<GroundIndex>(m)};
    fam.sets.push_back(std::move(s));
    fam.selections.push_back(std::move(record));
  }
  return fam;
}

std::vector<GroundIndex> intersect(const ADSet& a, const ADSet& b) {
  if (same_representation(a, b))
    throw InputError("intersection of a set with itself is infinite");
  if (a.is_branch() != b.is_branch())
    throw InputError("cannot intersect sets of different representations");

  std::vector<GroundIndex> out;
  if (a.is_branch()) {
    const Rat& x = std::get<BranchRep>(a.rep).x;
    const Rat& y = std::get<BranchRep>(b.rep).x;
    for (unsigned l = 1; l <= kMaxDepth; ++l) {
      GroundIndex vx = prefix_value(x, l);
      if (vx != prefix_value(y, l)) return out;
      out.push_back(prefix_code(l, vx));
    }
    throw InputError("generators agree beyond the depth cap");
  }

  const auto& ra = as_luzin(a);
  const auto& rb = as_luzin(b);
  if (ra.tail_modulus == rb.tail_modulus &&
      ra.tail_offset % ra.tail_modulus == rb.tail_offset % rb.tail_modulus)
    throw InputError("tails share a residue: intersection is infinite");
  std::set_intersection(ra.committed.begin(), ra.committed.end(),
                        rb.committed.begin(), rb.committed.end(),
                        std::back_inserter(out));
  for (GroundIndex e : ra.committed)
    if (tail_contains(rb, e)) out.push_back(e);
  for (GroundIndex e : rb.committed)
    if (tail_contains(ra, e)) out.push_back(e);
  // tails themselves are residue-disjoint, so nothing else can coincide
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rat phi_limit(const ADFamily& family, SetId id) {
  const ADSet& s = family.set(id);
  if (!s.is_branch()) throw InputError("phi limit requires a branch set");
  return std::get<BranchRep>(s.rep).x;
}

LuzinCheckReport check_luzin_property(const ADFamily& family, GroundIndex k) {
  if (family.kind != FamilyKind::luzin)
    throw InputError("luzin property check requires a staged family");
  LuzinCheckReport rep;
  rep.k = k;
  for (SetId alpha = 0; alpha < family.size(); ++alpha) {
    LuzinStageReport st;
    st.stage = alpha;
    st.bound = static_cast<std::size_t>(k) + 1;
    for (SetId beta = 0; beta < alpha; ++beta) {
      auto common = intersect(family.set(alpha), family.set(beta));
      // an empty intersection certainly stays at or below level k
      if (common.empty() || common.back() <= k) ++st.low_pairs;
    }
    st.ok = st.low_pairs <= st.bound;
    rep.ok = rep.ok && st.ok;
    rep.stages.push_back(st);
  }
  return rep;
}

AlmostDisjointReport check_almost_disjoint(const ADFamily& family) {
  AlmostDisjointReport rep;
  for (SetId i = 0; i < family.size(); ++i) {
    for (SetId j = i + 1; j < family.size(); ++j) {
      std::size_t sz = intersect(family.set(i), family.set(j)).size();
      if (sz > rep.max_intersection) {
        rep.max_intersection = sz;
        rep.worst_a = i;
        rep.worst_b = j;
      }
    }
  }
  return rep;
}

}  // namespace adlab
