// Command-line front end: family generation and audit, seeded sphere
// sampling, extraction pipelines, certificate verification, and sample
// analysis. Every run is reproducible from its flags; files are JSON with
// exact rationals, and identical configs produce byte-identical outputs.
//
// Exit codes: 0 success (verify: certificate holds), 1 verification failure,
// 2 invalid input, 3 a pipeline stage could not make progress.

#include <CLI11.hpp>

#include "adlab/analyzer.hpp"
#include "adlab/io.hpp"

#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace adlab;

namespace {

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const std::string& item : split_list(s, ',')) out.push_back(rat_from_string(item));
  return out;
}

SetId parse_set_id(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw InputError("'" + s + "' is not a set id");
  return static_cast<SetId>(v);
}

// "0:1,2:3" -> {(0,1), (2,3)}
std::vector<std::pair<SetId, SetId>> parse_pairs(const std::string& s) {
  std::vector<std::pair<SetId, SetId>> out;
  for (const std::string& item : split_list(s, ',')) {
    auto sep = item.find(':');
    if (sep == std::string::npos)
      throw InputError("pair '" + item + "' is not of the form a:b");
    out.push_back({parse_set_id(item.substr(0, sep)),
                   parse_set_id(item.substr(sep + 1))});
  }
  return out;
}

ADFamily load_family(const std::string& path) {
  return family_from_json(read_text_file(path));
}

VectorSet load_vectors(const std::string& path) {
  return vector_set_from_json(read_text_file(path));
}

std::vector<XAVector> canonical_entries(const VectorSet& vs, const char* who) {
  std::vector<XAVector> out;
  for (const VectorEntry& e : vs.entries) {
    if (!std::holds_alternative<XAVector>(e))
      throw InputError(std::string(who) + " needs canonical vectors");
    out.push_back(std::get<XAVector>(e));
  }
  return out;
}

std::vector<ScaledXAVector> scaled_entries(const VectorSet& vs, const char* who) {
  std::vector<ScaledXAVector> out;
  for (const VectorEntry& e : vs.entries) {
    if (!std::holds_alternative<ScaledXAVector>(e))
      throw InputError(std::string(who) + " needs normalized vectors");
    out.push_back(std::get<ScaledXAVector>(e));
  }
  return out;
}

std::string claim_text(const Claim& c) {
  switch (c.type) {
    case ClaimType::concentrated:
      return "concentrated within " + rat_to_string(c.value);
    case ClaimType::equilateral:
      return "equilateral at " + rat_to_string(c.value);
    case ClaimType::separated:
      return std::string("separated ") + (c.strict ? "beyond " : "at ") +
             rat_to_string(c.value);
  }
  return "?";
}

void print_stage_log(const Certificate& cert) {
  for (const std::string& line : cert.provenance.stage_log)
    std::cerr << "[stage] " << line << "\n";
}

std::string norm_value_text(const NormValue& v) {
  if (v.exact) return rat_to_string(v.lo);
  return "[" + rat_approx(v.lo) + ", " + rat_approx(v.hi) + "]";
}

const char* color_name(PairColor c) {
  switch (c) {
    case PairColor::minus: return "minus";
    case PairColor::zero: return "zero";
    case PairColor::plus: return "plus";
    case PairColor::unresolved: return "unresolved";
  }
  return "?";
}

// Report JSON is assembled textually from already-escaped primitive pieces;
// everything emitted here is a number, a known tag, or a rational string.
std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for almost-disjoint-family sequence spaces"};
  app.require_subcommand(1);

  // ---- family ----
  CLI::App* family = app.add_subcommand("family", "generate or audit a family file");
  family->require_subcommand(1);

  std::string fg_kind = "branch", fg_reals, fg_out;
  std::size_t fg_count = 0;
  GroundIndex fg_min_element = 0;
  std::uint64_t fg_seed = 0;
  bool fg_seed_given = false;
  CLI::App* fgen = family->add_subcommand("gen", "build a family and write it");
  fgen->add_option("--kind", fg_kind, "branch or luzin")
      ->check(CLI::IsMember({"branch", "luzin"}));
  fgen->add_option("--count", fg_count, "number of sets");
  fgen->add_option("--reals", fg_reals, "comma list of generators (branch only)");
  fgen->add_option("--min-element", fg_min_element, "least allowed element (luzin)");
  fgen->add_option("--seed", fg_seed, "generator seed")
      ->each([&](const std::string&) { fg_seed_given = true; });
  fgen->add_option("--out", fg_out, "output path")->required();

  std::string fc_path;
  GroundIndex fc_level = 0;
  CLI::App* fcheck = family->add_subcommand("check", "audit a family file");
  fcheck->add_option("--family", fc_path, "family file")->required();
  fcheck->add_option("--level", fc_level, "finite-to-one witness level (luzin)");

  // ---- sample ----
  std::string sm_family, sm_norm = "sup", sm_base = "1/2", sm_tol = "1/1000000",
              sm_out;
  std::size_t sm_count = 0, sm_max_terms = 3, sm_max_support = 4;
  std::uint64_t sm_seed = 0;
  CLI::App* sample = app.add_subcommand("sample", "sample unit sphere vectors");
  sample->add_option("--family", sm_family, "family file")->required();
  sample->add_option("--count", sm_count, "number of vectors")->required();
  sample->add_option("--norm", sm_norm, "sup or T")
      ->check(CLI::IsMember({"sup", "T"}));
  sample->add_option("--base", sm_base, "T-norm weight base");
  sample->add_option("--tol", sm_tol, "T-norm interval width cap");
  sample->add_option("--max-terms", sm_max_terms, "terms per vector");
  sample->add_option("--max-support", sm_max_support, "finite-part support size");
  sample->add_option("--seed", sm_seed, "sampler seed")->required();
  sample->add_option("--out", sm_out, "output path")->required();

  // ---- extract ----
  std::string ex_pipeline, ex_vectors, ex_family, ex_cert, ex_eps, ex_qgrid,
      ex_pairs, ex_base = "1/2", ex_tol = "1/1000000", ex_out, ex_vectors_out;
  std::size_t ex_pairs_count = 0, ex_count = 0;
  CLI::App* extract = app.add_subcommand("extract", "run a pipeline, emit a certificate");
  extract->add_option("--pipeline", ex_pipeline, "pipeline name")
      ->required()
      ->check(CLI::IsMember({"concentrate-sup", "reduce-T", "luzin-equilateral",
                             "luzin-separated-T", "terenzi", "riesz"}));
  extract->add_option("--vectors", ex_vectors, "vector-set file");
  extract->add_option("--family", ex_family, "family file");
  extract->add_option("--certificate", ex_cert,
                      "restrict --vectors to this certificate's selection (terenzi)");
  extract->add_option("--eps", ex_eps, "concentration epsilon");
  extract->add_option("--q-grid", ex_qgrid, "comma list of band parameters");
  extract->add_option("--pairs", ex_pairs, "pair list a:b,c:d");
  extract->add_option("--pairs-count", ex_pairs_count,
                      "use pairs (0,1),(2,3),... up to this count");
  extract->add_option("--count", ex_count, "vector count (riesz)");
  extract->add_option("--base", ex_base, "T-norm weight base");
  extract->add_option("--tol", ex_tol, "T-norm interval width cap");
  extract->add_option("--out", ex_out, "certificate path")->required();
  extract->add_option("--vectors-out", ex_vectors_out,
                      "write the certificate's companion vectors here");

  // ---- verify ----
  std::string vf_cert, vf_vectors;
  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("--certificate", vf_cert, "certificate file")->required();
  verify->add_option("--vectors", vf_vectors, "vector-set file")->required();

  // ---- analyze ----
  std::string an_mode, an_vectors, an_norm, an_base, an_tol, an_color = "plus",
              an_rlow = "1/4", an_rhigh = "3/4", an_out;
  CLI::App* analyze = app.add_subcommand("analyze", "reports over a vector set");
  analyze->add_option("--mode", an_mode, "matrix, color, clique, kottman, or probes")
      ->required()
      ->check(CLI::IsMember({"matrix", "color", "clique", "kottman", "probes"}));
  analyze->add_option("--vectors", an_vectors, "vector-set file")->required();
  analyze->add_option("--norm", an_norm, "sup or T (default: the file's norm)")
      ->check(CLI::IsMember({"sup", "T"}));
  analyze->add_option("--base", an_base, "T-norm weight base override");
  analyze->add_option("--tol", an_tol, "T-norm interval width cap override");
  analyze->add_option("--color", an_color, "clique color")
      ->check(CLI::IsMember({"minus", "zero", "plus"}));
  analyze->add_option("--radius-low", an_rlow, "inner radius for the probes mode");
  analyze->add_option("--radius-high", an_rhigh, "outer radius for the probes mode");
  analyze->add_option("--out", an_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    // ---- family gen ----
    if (fgen->parsed()) {
      ADFamily fam;
      if (!fg_reals.empty()) {
        if (fg_kind != "branch")
          throw InputError("--reals applies to branch families only");
        std::vector<Rat> xs = parse_rat_list(fg_reals);
        if (fg_count != 0 && fg_count != xs.size())
          throw InputError("--count disagrees with the --reals list");
        fam = build_branch_family(xs);
      } else {
        if (!fg_seed_given)
          throw InputError("--seed is required for generated families");
        if (fg_count == 0) throw InputError("--count must be positive");
        fam = (fg_kind == "branch")
                  ? build_random_branch_family(fg_count, fg_seed)
                  : build_luzin_family(fg_count, fg_min_element, fg_seed);
      }
      write_text_file(fg_out, family_to_json(fam));
      std::cout << "family " << fg_kind << ": " << fam.size() << " sets -> "
                << fg_out << "\n";
      return 0;
    }

    // ---- family check ----
    if (fcheck->parsed()) {
      ADFamily fam = load_family(fc_path);
      AlmostDisjointReport ad = check_almost_disjoint(fam);
      std::cout << "sets: " << fam.size() << "\n";
      std::cout << "largest pairwise intersection: " << ad.max_intersection
                << " (sets " << ad.worst_a << ", " << ad.worst_b << ")\n";
      if (!ad.ok) {
        std::cerr << "almost-disjointness audit failed at pair (" << ad.worst_a
                  << ", " << ad.worst_b << ")\n";
        return 2;
      }
      if (fam.kind == FamilyKind::luzin) {
        LuzinCheckReport lz = check_luzin_property(fam, fc_level);
        std::cout << "finite-to-one witness at level " << fc_level << ": "
                  << (lz.ok ? "holds" : "fails") << "\n";
        if (!lz.ok) {
          for (const LuzinStageReport& st : lz.stages)
            if (!st.ok)
              std::cerr << "stage " << st.stage << ": " << st.low_pairs
                        << " low pairs exceed bound " << st.bound << "\n";
          return 2;
        }
      }
      return 0;
    }

    // ---- sample ----
    if (sample->parsed()) {
      auto fam = std::make_shared<ADFamily>(load_family(sm_family));
      VectorSet vs;
      vs.family = fam;
      vs.norm = (sm_norm == "sup") ? NormKind::sup : NormKind::t;
      vs.params.base = rat_from_string(sm_base);
      vs.params.tol = rat_from_string(sm_tol);
      vs.params.validate();
      SplitMix64 rng = SplitMix64(sm_seed).split("sample");
      for (std::size_t k = 0; k < sm_count; ++k) {
        if (vs.norm == NormKind::sup)
          vs.entries.emplace_back(
              sample_sup_sphere(fam, sm_max_terms, sm_max_support, rng));
        else
          vs.entries.emplace_back(
              sample_t_sphere(fam, sm_max_terms, sm_max_support, rng, vs.params));
      }
      write_text_file(sm_out, vector_set_to_json(vs));
      std::cout << "sampled " << sm_count << " " << sm_norm
                << "-unit vectors -> " << sm_out << "\n";
      return 0;
    }

    // ---- extract ----
    if (extract->parsed()) {
      TNormParams p;
      p.base = rat_from_string(ex_base);
      p.tol = rat_from_string(ex_tol);
      p.validate();

      auto named_pairs = [&]() {
        if (!ex_pairs.empty()) return parse_pairs(ex_pairs);
        if (ex_pairs_count == 0)
          throw InputError("give --pairs or a positive --pairs-count");
        std::vector<std::pair<SetId, SetId>> ps;
        for (std::size_t i = 0; i < ex_pairs_count; ++i)
          ps.push_back({static_cast<SetId>(2 * i), static_cast<SetId>(2 * i + 1)});
        return ps;
      };
      auto need = [&](const std::string& value, const char* flag) {
        if (value.empty())
          throw InputError(std::string("--") + flag + " is required for " +
                           ex_pipeline);
        return value;
      };

      Certificate cert;
      if (ex_pipeline == "concentrate-sup") {
        VectorSet vs = load_vectors(need(ex_vectors, "vectors"));
        cert = concentrate_sup(canonical_entries(vs, "concentrate-sup"),
                               rat_from_string(need(ex_eps, "eps")));
      } else if (ex_pipeline == "reduce-T") {
        VectorSet vs = load_vectors(need(ex_vectors, "vectors"));
        std::vector<Rat> grid =
            ex_qgrid.empty() ? default_q_grid() : parse_rat_list(ex_qgrid);
        cert = reduce_concentrate_T(scaled_entries(vs, "reduce-T"), grid, vs.params);
      } else if (ex_pipeline == "luzin-equilateral") {
        auto fam = std::make_shared<ADFamily>(load_family(need(ex_family, "family")));
        EquilateralResult r = luzin_equilateral(fam, named_pairs());
        cert = r.cert;
        if (!ex_vectors_out.empty()) {
          VectorSet out;
          out.family = fam;
          out.norm = NormKind::sup;
          for (XAVector& v : r.vectors) out.entries.emplace_back(std::move(v));
          write_text_file(ex_vectors_out, vector_set_to_json(out));
        }
      } else if (ex_pipeline == "luzin-separated-T") {
        auto fam = std::make_shared<ADFamily>(load_family(need(ex_family, "family")));
        SeparatedTResult r = luzin_separated_T(fam, named_pairs(), p);
        cert = r.cert;
        if (!ex_vectors_out.empty()) {
          VectorSet out;
          out.family = fam;
          out.norm = NormKind::t;
          out.params = p;
          for (ScaledXAVector& v : r.vectors) out.entries.emplace_back(std::move(v));
          write_text_file(ex_vectors_out, vector_set_to_json(out));
        }
      } else if (ex_pipeline == "terenzi") {
        VectorSet vs = load_vectors(need(ex_vectors, "vectors"));
        std::vector<XAVector> inputs = canonical_entries(vs, "terenzi");
        if (!ex_cert.empty()) {
          Certificate sel = certificate_from_json(read_text_file(ex_cert));
          std::vector<XAVector> chosen;
          for (std::size_t idx : sel.gamma) {
            if (idx >= inputs.size())
              throw InputError("certificate index out of range for the vector set");
            chosen.push_back(inputs[idx]);
          }
          inputs = std::move(chosen);
        }
        TerenziResult r = terenzi_unit_sphere(inputs, NormKind::sup);
        cert = r.cert;
        if (!ex_vectors_out.empty()) {
          VectorSet out;
          out.family = vs.family;
          out.norm = NormKind::sup;
          for (XAVector& v : r.vectors) out.entries.emplace_back(std::move(v));
          write_text_file(ex_vectors_out, vector_set_to_json(out));
        }
      } else {  // riesz
        auto fam = std::make_shared<ADFamily>(load_family(need(ex_family, "family")));
        if (ex_count == 0) throw InputError("--count is required for riesz");
        RieszResult r = riesz_separated(fam, ex_count);
        cert = r.cert;
        if (!ex_vectors_out.empty()) {
          VectorSet out;
          out.family = fam;
          out.norm = NormKind::sup;
          for (const RieszVector& v : r.vectors) out.entries.emplace_back(v);
          write_text_file(ex_vectors_out, vector_set_to_json(out));
        }
      }

      print_stage_log(cert);
      write_text_file(ex_out, certificate_to_json(cert));
      std::cout << ex_pipeline << ": kept " << cert.gamma.size()
                << " indices, " << claim_text(cert.claim) << " -> " << ex_out
                << "\n";
      return 0;
    }

    // ---- verify ----
    if (verify->parsed()) {
      Certificate cert = certificate_from_json(read_text_file(vf_cert));
      VectorSet vs = load_vectors(vf_vectors);
      VerifyReport rep = verify_certificate(cert, vs);
      if (rep.ok) {
        std::cout << "certificate holds: " << claim_text(cert.claim) << " over "
                  << cert.gamma.size() << " indices\n";
        return 0;
      }
      std::cout << "verification failed: " << rep.detail << "\n";
      return 1;
    }

    // ---- analyze ----
    if (analyze->parsed()) {
      VectorSet vs = load_vectors(an_vectors);
      NormKind norm = an_norm.empty()
                          ? vs.norm
                          : (an_norm == "sup" ? NormKind::sup : NormKind::t);
      TNormParams p = vs.params;
      if (!an_base.empty()) p.base = rat_from_string(an_base);
      if (!an_tol.empty()) p.tol = rat_from_string(an_tol);
      p.validate();

      std::ostringstream report;
      if (an_mode == "matrix" || an_mode == "color" || an_mode == "clique") {
        DistanceMatrix m = distance_matrix(vs, norm, p);
        if (an_mode == "matrix") {
          for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j)
              std::cout << (j ? "  " : "") << norm_value_text(m.entries[i][j]);
            std::cout << "\n";
          }
          report << "{\n  \"norm\": " << json_str(norm == NormKind::sup ? "sup" : "T")
                 << ",\n  \"entries\": [\n";
          for (std::size_t i = 0; i < m.size(); ++i) {
            report << "    [";
            for (std::size_t j = 0; j < m.size(); ++j) {
              const NormValue& v = m.entries[i][j];
              report << (j ? ", " : "") << "{\"exact\": " << (v.exact ? "true" : "false")
                     << ", \"lo\": " << json_str(rat_to_string(v.lo))
                     << ", \"hi\": " << json_str(rat_to_string(v.hi)) << "}";
            }
            report << "]" << (i + 1 < m.size() ? "," : "") << "\n";
          }
          report << "  ]\n}\n";
        } else {
          PairColoring c = classify_pairs(m);
          if (an_mode == "color") {
            const char* sym = "-0+?";
            for (std::size_t i = 0; i < c.size(); ++i) {
              for (std::size_t j = 0; j < c.size(); ++j)
                std::cout << (j ? " " : "")
                          << (i == j ? '.' : sym[static_cast<int>(c.colors[i][j])]);
              std::cout << "\n";
            }
            report << "{\n  \"colors\": [\n";
            for (std::size_t i = 0; i < c.size(); ++i) {
              report << "    [";
              for (std::size_t j = 0; j < c.size(); ++j)
                report << (j ? ", " : "") << json_str(color_name(c.colors[i][j]));
              report << "]" << (i + 1 < c.size() ? "," : "") << "\n";
            }
            report << "  ]\n}\n";
          } else {
            PairColor want = an_color == "minus"
                                 ? PairColor::minus
                                 : (an_color == "zero" ? PairColor::zero
                                                       : PairColor::plus);
            std::vector<std::size_t> clique = max_clique(c, want);
            std::cout << an_color << "-clique of size " << clique.size() << ":";
            for (std::size_t v : clique) std::cout << " " << v;
            std::cout << "\n";
            report << "{\n  \"color\": " << json_str(an_color)
                   << ",\n  \"size\": " << clique.size() << ",\n  \"indices\": [";
            for (std::size_t k = 0; k < clique.size(); ++k)
              report << (k ? ", " : "") << clique[k];
            report << "]\n}\n";
          }
        }
      } else if (an_mode == "kottman") {
        std::vector<KottmanStep> steps = kottman_estimate(vs, norm, p);
        std::cout << "size  separation lower bound\n";
        for (const KottmanStep& s : steps)
          std::cout << s.size << "     " << rat_to_string(s.bound) << " ("
                    << rat_approx(s.bound) << ")\n";
        report << "{\n  \"staircase\": [\n";
        for (std::size_t k = 0; k < steps.size(); ++k)
          report << "    {\"size\": " << steps[k].size
                 << ", \"bound\": " << json_str(rat_to_string(steps[k].bound)) << "}"
                 << (k + 1 < steps.size() ? "," : "") << "\n";
        report << "  ]\n}\n";
      } else {  // probes
        std::vector<XAVector> xs = canonical_entries(vs, "probes");
        if (xs.empty()) throw InputError("probes need a nonempty vector set");
        EquivalenceReport eq = norm_equivalence_check(xs, p);
        ConvexityReport cx = strict_convexity_probe(xs, norm, p);

        Rat a = rat_from_string(an_rlow), b = rat_from_string(an_rhigh);
        std::vector<std::pair<XAVector, XAVector>> pairs;
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
          // interior grid: certified T enclosures must not graze the ends
          auto radius = [&](std::size_t i) {
            Rat f(2 * static_cast<long>(i % 5) + 1, 10);
            f.canonicalize();
            return Rat(a + (b - a) * f);
          };
          auto rescale = [&](const XAVector& x, const Rat& r) {
            if (norm == NormKind::sup) return scale(x, r / sup_norm(x));
            return scale(x, r / t_norm(x, p).hi);
          };
          pairs.push_back({rescale(xs[k], radius(k)), rescale(xs[k + 1], radius(k + 1))});
        }
        SpheresReport sp = spheres_inequality_check(pairs, a, b, norm, p);

        std::cout << "norm equivalence: " << (eq.ok ? "holds" : "FAILS")
                  << ", max T/sup ratio " << rat_approx(eq.max_ratio)
                  << " (certified multiplier " << rat_approx(eq.certified_bound)
                  << ")\n";
        std::cout << "convexity: ";
        if (norm == NormKind::sup)
          std::cout << (cx.witness_found ? "additive equality witness found"
                                         : "no witness in sample")
                    << (cx.seed_witness ? " (seed pair included)" : "") << "\n";
        else
          std::cout << cx.strict_pairs << " strict pairs, " << cx.inconclusive_pairs
                    << " inconclusive, " << cx.skipped_parallel << " parallel skipped\n";
        std::cout << "two-radii inequality: " << sp.confirmed << " confirmed, "
                  << sp.violated << " violated, " << sp.inconclusive
                  << " inconclusive\n";

        report << "{\n  \"equivalence\": {\"ok\": " << (eq.ok ? "true" : "false")
               << ", \"checked\": " << eq.checked
               << ", \"max_ratio\": " << json_str(rat_to_string(eq.max_ratio))
               << ", \"certified_bound\": "
               << json_str(rat_to_string(eq.certified_bound)) << "},\n";
        report << "  \"convexity\": {\"witness_found\": "
               << (cx.witness_found ? "true" : "false")
               << ", \"seed_witness\": " << (cx.seed_witness ? "true" : "false")
               << ", \"strict_pairs\": " << cx.strict_pairs
               << ", \"inconclusive_pairs\": " << cx.inconclusive_pairs
               << ", \"skipped_parallel\": " << cx.skipped_parallel << "},\n";
        report << "  \"spheres\": {\"confirmed\": " << sp.confirmed
               << ", \"violated\": " << sp.violated
               << ", \"inconclusive\": " << sp.inconclusive
               << ", \"first_issue\": " << json_str(sp.first_issue) << "}\n}\n";
      }

      if (!an_out.empty()) write_text_file(an_out, report.str());
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
