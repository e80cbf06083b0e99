#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adlab/io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

using namespace adlab;
namespace fs = std::filesystem;

namespace {

Rat rq(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

FamilyPtr small_branch_family() {
  return std::make_shared<ADFamily>(
      build_branch_family({rq(1, 3), rq(2, 5), rq(1, 5), rq(5, 7)}));
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "adlab_io_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string path_of(const fs::path& dir, const char* name) {
  return (dir / name).string();
}

// Exit code of one CLI invocation, output discarded.
int run_cli(const std::string& args) {
  std::string cmd = std::string(ADLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

}  // namespace

TEST_CASE("family files round-trip byte for byte") {
  SUBCASE("branch") {
    ADFamily fam = build_random_branch_family(12, 314);
    std::string text = family_to_json(fam);
    ADFamily back = family_from_json(text);
    CHECK(family_to_json(back) == text);
    CHECK(back.kind == FamilyKind::branch);
    CHECK(back.seed == 314);
    REQUIRE(back.size() == 12);
    for (SetId s = 0; s < 12; ++s)
      CHECK(std::get<BranchRep>(back.set(s).rep).x ==
            std::get<BranchRep>(fam.set(s).rep).x);
  }

  SUBCASE("staged") {
    ADFamily fam = build_luzin_family(10, 7, 2718);
    std::string text = family_to_json(fam);
    ADFamily back = family_from_json(text);
    CHECK(family_to_json(back) == text);
    CHECK(back.kind == FamilyKind::luzin);
    CHECK(back.floor == 7);
    REQUIRE(back.size() == 10);
    CHECK(back.selections.size() == fam.selections.size());
    CHECK(intersect(back.set(3), back.set(8)) == intersect(fam.set(3), fam.set(8)));
  }
}

TEST_CASE("family files reject structural damage") {
  ADFamily fam = build_random_branch_family(3, 11);
  std::string good = family_to_json(fam);

  CHECK_THROWS_AS(family_from_json("{"), InputError);
  CHECK_THROWS_AS(family_from_json("[1,2,3]\n"), InputError);

  std::string bad_kind = good;
  bad_kind.replace(bad_kind.find("branch"), 6, "brunch");
  CHECK_THROWS_AS(family_from_json(bad_kind), InputError);

  // dyadic generator: the family builder refuses it on load
  std::string dyadic =
      R"({"kind": "branch", "seed": 0, "sets": [{"id": 0, "rep": {"x": "1/4"}}]})";
  CHECK_THROWS_AS(family_from_json(dyadic), InputError);

  ADFamily staged = build_luzin_family(4, 0, 5);
  std::string sg = family_to_json(staged);
  std::string bad_ids = sg;
  bad_ids.replace(bad_ids.find("\"id\": 0"), 7, "\"id\": 9");
  CHECK_THROWS_AS(family_from_json(bad_ids), InputError);
}

TEST_CASE("vector-set files round-trip byte for byte") {
  FamilyPtr fam = small_branch_family();
  TNormParams p;
  SplitMix64 rng(808);

  VectorSet vs;
  vs.family = fam;
  vs.norm = NormKind::sup;
  vs.entries.emplace_back(sample_vector(fam, 3, 4, rng));
  vs.entries.emplace_back(XAVector::make(
      fam, {{2, rq(-1, 3)}}, {Term{rq(5, 7), 0}, Term{Rat(-1), 3}}));
  std::string text = vector_set_to_json(vs);
  VectorSet back = vector_set_from_json(text);
  CHECK(vector_set_to_json(back) == text);
  REQUIRE(back.entries.size() == 2);
  const XAVector& v1 = std::get<XAVector>(back.entries[1]);
  CHECK(v1.g() == std::get<XAVector>(vs.entries[1]).g());
  CHECK(v1.coefficient(0) == rq(5, 7));
  CHECK(v1.coefficient(3) == Rat(-1));

  SUBCASE("normalized entries keep their scale enclosure") {
    VectorSet tv;
    tv.family = fam;
    tv.norm = NormKind::t;
    tv.params = p;
    tv.entries.emplace_back(t_normalize(XAVector::indicator(fam, 0), p));
    tv.entries.emplace_back(t_normalize(XAVector::indicator(fam, 2), p));
    std::string ttext = vector_set_to_json(tv);
    VectorSet tback = vector_set_from_json(ttext);
    CHECK(vector_set_to_json(tback) == ttext);
    const ScaledXAVector& s0 = std::get<ScaledXAVector>(tback.entries[0]);
    const ScaledXAVector& o0 = std::get<ScaledXAVector>(tv.entries[0]);
    CHECK(s0.scale.lo == o0.scale.lo);
    CHECK(s0.scale.hi == o0.scale.hi);
    CHECK(s0.base_vec.terms().size() == 1);
  }

  SUBCASE("symbolic entries carry the set id") {
    VectorSet rz;
    rz.family = fam;
    rz.entries.emplace_back(RieszVector{2});
    std::string rtext = vector_set_to_json(rz);
    VectorSet rback = vector_set_from_json(rtext);
    CHECK(vector_set_to_json(rback) == rtext);
    CHECK(std::get<RieszVector>(rback.entries[0]).set == 2);
    std::string out_of_range = rtext;
    out_of_range.replace(out_of_range.find("\"set\": 2"), 8, "\"set\": 9");
    CHECK_THROWS_AS(vector_set_from_json(out_of_range), InputError);
  }

  SUBCASE("unknown kinds and bad norm tags are rejected") {
    std::string bad = text;
    bad.replace(bad.find("canonical"), 9, "canonique");
    CHECK_THROWS_AS(vector_set_from_json(bad), InputError);
    std::string bad_norm = text;
    bad_norm.replace(bad_norm.find("\"norm\": \"sup\""), 13, "\"norm\": \"max\"");
    CHECK_THROWS_AS(vector_set_from_json(bad_norm), InputError);
  }
}

TEST_CASE("certificates round-trip byte for byte and stay verifiable") {
  FamilyPtr fam = std::make_shared<ADFamily>(build_luzin_family(12, 10, 42));
  std::vector<std::pair<SetId, SetId>> pairs;
  for (SetId s = 0; s + 1 < 12; s += 2) pairs.push_back({s, s + 1});

  SUBCASE("exact evidence") {
    EquilateralResult r = luzin_equilateral(fam, pairs);
    std::string text = certificate_to_json(r.cert);
    Certificate back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);

    VectorSet vs;
    vs.family = fam;
    vs.norm = NormKind::sup;
    for (XAVector& v : r.vectors) vs.entries.emplace_back(std::move(v));
    CHECK(verify_certificate(back, vs).ok);
  }

  SUBCASE("interval evidence") {
    TNormParams p;
    SeparatedTResult r = luzin_separated_T(fam, pairs, p);
    std::string text = certificate_to_json(r.cert);
    Certificate back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(back.provenance.pipeline == r.cert.provenance.pipeline);
    CHECK(back.provenance.stage_log == r.cert.provenance.stage_log);
    REQUIRE(!back.evidence.empty());
    CHECK_FALSE(back.evidence[0].value.exact);

    VectorSet vs;
    vs.family = fam;
    vs.norm = NormKind::t;
    vs.params = p;
    for (ScaledXAVector& v : r.vectors) vs.entries.emplace_back(std::move(v));
    CHECK(verify_certificate(back, vs).ok);
  }

  SUBCASE("claim damage is rejected on load") {
    EquilateralResult r = luzin_equilateral(fam, pairs);
    std::string text = certificate_to_json(r.cert);
    std::string bad = text;
    bad.replace(bad.find("equilateral"), 11, "equidistant");
    CHECK_THROWS_AS(certificate_from_json(bad), InputError);
  }
}

TEST_CASE("cli: generation, determinism, and exit codes") {
  fs::path dir = scratch_dir();
  std::string fam = path_of(dir, "fam.json");
  std::string luzin = path_of(dir, "luzin.json");

  SUBCASE("family generation and audit") {
    CHECK(run_cli("family gen --kind branch --count 8 --seed 21 --out " + fam) == 0);
    CHECK(run_cli("family check --family " + fam) == 0);
    CHECK(run_cli("family gen --kind luzin --count 8 --min-element 10 --seed 4 --out " +
                  luzin) == 0);
    CHECK(run_cli("family check --family " + luzin) == 0);
    CHECK(family_from_json(read_text_file(fam)).size() == 8);

    // explicit generators, no seed needed
    std::string explicit_fam = path_of(dir, "explicit.json");
    CHECK(run_cli("family gen --kind branch --reals 1/3,2/5,5/7 --out " +
                  explicit_fam) == 0);
    CHECK(family_from_json(read_text_file(explicit_fam)).size() == 3);

    // randomized without a seed is refused
    CHECK(run_cli("family gen --kind branch --count 8 --out " + fam) == 2);
    // corrupted file fails the audit path with an input error
    write_text_file(fam, "{ not json\n");
    CHECK(run_cli("family check --family " + fam) == 2);
  }

  SUBCASE("sampling is deterministic in the seed") {
    CHECK(run_cli("family gen --kind branch --count 8 --seed 21 --out " + fam) == 0);
    std::string a = path_of(dir, "a.json"), b = path_of(dir, "b.json"),
                c = path_of(dir, "c.json");
    CHECK(run_cli("sample --family " + fam + " --count 6 --seed 5 --out " + a) == 0);
    CHECK(run_cli("sample --family " + fam + " --count 6 --seed 5 --out " + b) == 0);
    CHECK(run_cli("sample --family " + fam + " --count 6 --seed 6 --out " + c) == 0);
    CHECK(read_text_file(a) == read_text_file(b));
    CHECK(read_text_file(a) != read_text_file(c));

    // every sampled sup vector is exactly unit after reload
    VectorSet vs = vector_set_from_json(read_text_file(a));
    for (const VectorEntry& e : vs.entries)
      CHECK(sup_norm(std::get<XAVector>(e)) == 1);

    std::string empty = path_of(dir, "empty.json");
    CHECK(run_cli("sample --family " + fam + " --count 0 --seed 5 --out " + empty) == 0);
    CHECK(vector_set_from_json(read_text_file(empty)).entries.empty());
  }

  SUBCASE("extract, verify, tamper, and pipeline failure") {
    CHECK(run_cli("family gen --kind luzin --count 16 --min-element 10 --seed 42 --out " +
                  luzin) == 0);
    std::string cert = path_of(dir, "cert.json");
    std::string vecs = path_of(dir, "vecs.json");
    CHECK(run_cli("extract --pipeline luzin-equilateral --family " + luzin +
                  " --pairs-count 8 --out " + cert + " --vectors-out " + vecs) == 0);
    CHECK(run_cli("verify --certificate " + cert + " --vectors " + vecs) == 0);

    // one perturbed evidence entry must flip the verdict
    Certificate c = certificate_from_json(read_text_file(cert));
    REQUIRE(!c.evidence.empty());
    c.evidence[0].value.lo += rq(1, 8);
    c.evidence[0].value.hi += rq(1, 8);
    std::string bad = path_of(dir, "tampered.json");
    write_text_file(bad, certificate_to_json(c));
    CHECK(run_cli("verify --certificate " + bad + " --vectors " + vecs) == 1);

    // unreadable input
    CHECK(run_cli("verify --certificate " + path_of(dir, "nope.json") +
                  " --vectors " + vecs) == 2);

    // a low-floor staged family cannot be 1-colored: pipeline failure
    std::string lowfloor = path_of(dir, "lowfloor.json");
    CHECK(run_cli("family gen --kind luzin --count 4 --min-element 0 --seed 3 --out " +
                  lowfloor) == 0);
    CHECK(run_cli("extract --pipeline luzin-equilateral --family " + lowfloor +
                  " --pairs 0:1,2:3 --out " + path_of(dir, "lf.json")) == 3);
  }

  SUBCASE("analyze reports are deterministic") {
    CHECK(run_cli("family gen --kind luzin --count 16 --min-element 10 --seed 42 --out " +
                  luzin) == 0);
    std::string cert = path_of(dir, "cert.json");
    std::string vecs = path_of(dir, "vecs.json");
    CHECK(run_cli("extract --pipeline luzin-equilateral --family " + luzin +
                  " --pairs-count 8 --out " + cert + " --vectors-out " + vecs) == 0);
    std::string r1 = path_of(dir, "r1.json"), r2 = path_of(dir, "r2.json");
    CHECK(run_cli("analyze --mode kottman --vectors " + vecs + " --out " + r1) == 0);
    CHECK(run_cli("analyze --mode kottman --vectors " + vecs + " --out " + r2) == 0);
    CHECK(read_text_file(r1) == read_text_file(r2));
    CHECK(read_text_file(r1).find("\"bound\": \"2\"") != std::string::npos);
    CHECK(run_cli("analyze --mode matrix --vectors " + vecs + " --out " + r1) == 0);
    CHECK(run_cli("analyze --mode clique --color plus --vectors " + vecs) == 0);
    CHECK(run_cli("analyze --mode badmode --vectors " + vecs) == 2);
  }
}
