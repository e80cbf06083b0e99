#include "adlab/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace adlab {

namespace {

using nlohmann::json;

// All loads funnel through this wrapper so a malformed field becomes an
// InputError (exit code 2) instead of a raw json exception.
template <typename F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

std::string norm_name(NormKind k) { return k == NormKind::sup ? "sup" : "T"; }

NormKind norm_from_name(const std::string& s) {
  if (s == "sup") return NormKind::sup;
  if (s == "T") return NormKind::t;
  throw InputError("unknown norm tag '" + s + "' (expected sup or T)");
}

json params_to_json(const TNormParams& p) {
  return json{{"base", rat_to_string(p.base)}, {"tol", rat_to_string(p.tol)}};
}

TNormParams params_from_json(const json& j) {
  TNormParams p;
  p.base = rat_from_string(j.at("base").get<std::string>());
  p.tol = rat_from_string(j.at("tol").get<std::string>());
  p.validate();
  return p;
}

json rep_to_json(const ADSet& s) {
  if (s.is_branch())
    return json{{"x", rat_to_string(std::get<BranchRep>(s.rep).x)}};
  const LuzinRep& r = std::get<LuzinRep>(s.rep);
  return json{{"committed", r.committed},
              {"tail_offset", r.tail_offset},
              {"tail_modulus", r.tail_modulus}};
}

json xa_vector_to_json(const XAVector& v) {
  json g = json::array();
  for (const auto& [n, q] : v.g()) g.push_back(json::array({n, rat_to_string(q)}));
  json terms = json::array();
  for (const Term& t : v.terms())
    terms.push_back(json::array({rat_to_string(t.q), t.set}));
  return json{{"g", std::move(g)}, {"terms", std::move(terms)}};
}

XAVector xa_vector_from_json(const json& j, const FamilyPtr& fam) {
  std::map<GroundIndex, Rat> g;
  for (const json& e : j.at("g")) {
    GroundIndex n = e.at(0).get<GroundIndex>();
    require_input(g.emplace(n, rat_from_string(e.at(1).get<std::string>())).second,
                  "duplicate g entry at index " + std::to_string(n));
  }
  std::vector<Term> terms;
  for (const json& e : j.at("terms"))
    terms.push_back(Term{rat_from_string(e.at(0).get<std::string>()),
                         e.at(1).get<SetId>()});
  return XAVector::make(fam, std::move(g), std::move(terms));
}

json entry_to_json(const VectorEntry& entry) {
  if (std::holds_alternative<XAVector>(entry)) {
    json j = xa_vector_to_json(std::get<XAVector>(entry));
    j["kind"] = "canonical";
    return j;
  }
  if (std::holds_alternative<ScaledXAVector>(entry)) {
    const ScaledXAVector& s = std::get<ScaledXAVector>(entry);
    return json{{"kind", "scaled"},
                {"base", xa_vector_to_json(s.base_vec)},
                {"scale", json::array({rat_to_string(s.scale.lo),
                                       rat_to_string(s.scale.hi)})},
                {"params", params_to_json(s.params)}};
  }
  return json{{"kind", "riesz"}, {"set", std::get<RieszVector>(entry).set}};
}

VectorEntry entry_from_json(const json& j, const FamilyPtr& fam) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "canonical") return xa_vector_from_json(j, fam);
  if (kind == "scaled") {
    ScaledXAVector s;
    s.base_vec = xa_vector_from_json(j.at("base"), fam);
    require_input(!s.base_vec.is_zero(), "scaled vector has zero base");
    s.scale = QInterval(rat_from_string(j.at("scale").at(0).get<std::string>()),
                        rat_from_string(j.at("scale").at(1).get<std::string>()));
    s.params = params_from_json(j.at("params"));
    return s;
  }
  if (kind == "riesz") {
    SetId set = j.at("set").get<SetId>();
    require_input(set < fam->size(), "riesz set id out of range");
    return RieszVector{set};
  }
  throw InputError("unknown vector kind '" + kind + "'");
}

json norm_value_to_json(const NormValue& v) {
  return json{{"exact", v.exact},
              {"lo", rat_to_string(v.lo)},
              {"hi", rat_to_string(v.hi)}};
}

NormValue norm_value_from_json(const json& j) {
  NormValue v;
  v.exact = j.at("exact").get<bool>();
  v.lo = rat_from_string(j.at("lo").get<std::string>());
  v.hi = rat_from_string(j.at("hi").get<std::string>());
  return v;
}

json family_to_json_obj(const ADFamily& fam) {
  json sets = json::array();
  for (const ADSet& s : fam.sets)
    sets.push_back(json{{"id", s.id}, {"rep", rep_to_json(s)}});
  json j{{"seed", fam.seed}, {"sets", std::move(sets)}};
  if (fam.kind == FamilyKind::branch) {
    j["kind"] = "branch";
    j["parameters"] = json{{"count", fam.sets.size()}};
  } else {
    j["kind"] = "luzin";
    j["parameters"] =
        json{{"m", fam.sets.size()}, {"min_element", fam.floor}};
    j["floor"] = fam.floor;
    json sel = json::array();
    for (const auto& stage : fam.selections) {
      json row = json::array();
      for (const LuzinSelection& s : stage)
        row.push_back(json{{"element", s.element}, {"from", s.from}});
      sel.push_back(std::move(row));
    }
    j["selections"] = std::move(sel);
  }
  return j;
}

ADFamily family_from_json_obj(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  const json& sets = j.at("sets");
  if (kind == "branch") {
    std::vector<Rat> xs;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const json& rec = sets.at(i);
      require_input(rec.at("id").get<std::size_t>() == i,
                    "set ids must be consecutive from 0");
      xs.push_back(rat_from_string(rec.at("rep").at("x").get<std::string>()));
    }
    ADFamily fam = build_branch_family(xs);
    fam.seed = j.at("seed").get<std::uint64_t>();
    return fam;
  }
  require_input(kind == "luzin", "unknown family kind '" + kind + "'");
  ADFamily fam;
  fam.kind = FamilyKind::luzin;
  fam.seed = j.at("seed").get<std::uint64_t>();
  fam.floor = j.value("floor", GroundIndex{0});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const json& rec = sets.at(i);
    require_input(rec.at("id").get<std::size_t>() == i,
                  "set ids must be consecutive from 0");
    LuzinRep rep;
    rep.committed = rec.at("rep").at("committed").get<std::vector<GroundIndex>>();
    rep.tail_offset = rec.at("rep").at("tail_offset").get<GroundIndex>();
    rep.tail_modulus = rec.at("rep").at("tail_modulus").get<GroundIndex>();
    require_input(rep.tail_modulus >= 1, "tail modulus must be positive");
    for (std::size_t k = 0; k + 1 < rep.committed.size(); ++k)
      require_input(rep.committed[k] < rep.committed[k + 1],
                    "committed elements must be strictly ascending");
    require_input(rep.committed.empty() || rep.tail_offset > rep.committed.back(),
                  "tail offset must exceed every committed element");
    ADSet s;
    s.id = static_cast<SetId>(i);
    s.rep = std::move(rep);
    fam.sets.push_back(std::move(s));
  }
  if (j.contains("selections")) {
    for (const json& stage : j.at("selections")) {
      std::vector<LuzinSelection> row;
      for (const json& e : stage)
        row.push_back(LuzinSelection{e.at("from").get<SetId>(),
                                     e.at("element").get<GroundIndex>()});
      fam.selections.push_back(std::move(row));
    }
  }
  return fam;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string family_to_json(const ADFamily& fam) {
  return dump(family_to_json_obj(fam));
}

ADFamily family_from_json(const std::string& text) {
  return guarded("family file", [&] {
    return family_from_json_obj(json::parse(text));
  });
}

std::string vector_set_to_json(const VectorSet& vs) {
  json vecs = json::array();
  for (const VectorEntry& e : vs.entries) vecs.push_back(entry_to_json(e));
  json j{{"family", family_to_json_obj(*vs.family)},
         {"norm", norm_name(vs.norm)},
         {"params", params_to_json(vs.params)},
         {"vectors", std::move(vecs)}};
  return dump(j);
}

VectorSet vector_set_from_json(const std::string& text) {
  return guarded("vector-set file", [&] {
    json j = json::parse(text);
    VectorSet vs;
    vs.family = std::make_shared<ADFamily>(family_from_json_obj(j.at("family")));
    vs.norm = norm_from_name(j.at("norm").get<std::string>());
    vs.params = params_from_json(j.at("params"));
    for (const json& e : j.at("vectors"))
      vs.entries.push_back(entry_from_json(e, vs.family));
    return vs;
  });
}

std::string certificate_to_json(const Certificate& cert) {
  json claim;
  switch (cert.claim.type) {
    case ClaimType::concentrated: claim["type"] = "concentrated"; break;
    case ClaimType::equilateral: claim["type"] = "equilateral"; break;
    case ClaimType::separated: claim["type"] = "separated"; break;
  }
  claim["value"] = rat_to_string(cert.claim.value);
  claim["strict"] = cert.claim.strict;

  json evidence = json::array();
  for (const PairEvidence& e : cert.evidence) {
    json rec = norm_value_to_json(e.value);
    rec["i"] = e.i;
    rec["j"] = e.j;
    evidence.push_back(std::move(rec));
  }

  json j{{"claim", std::move(claim)},
         {"norm", norm_name(cert.norm)},
         {"params", params_to_json(cert.params)},
         {"gamma", cert.gamma},
         {"evidence", std::move(evidence)},
         {"provenance",
          json{{"pipeline", cert.provenance.pipeline},
               {"parameters", cert.provenance.parameters},
               {"stage_log", cert.provenance.stage_log}}}};
  return dump(j);
}

Certificate certificate_from_json(const std::string& text) {
  return guarded("certificate file", [&] {
    json j = json::parse(text);
    Certificate cert;
    std::string type = j.at("claim").at("type").get<std::string>();
    if (type == "concentrated")
      cert.claim.type = ClaimType::concentrated;
    else if (type == "equilateral")
      cert.claim.type = ClaimType::equilateral;
    else if (type == "separated")
      cert.claim.type = ClaimType::separated;
    else
      throw InputError("unknown claim type '" + type + "'");
    cert.claim.value = rat_from_string(j.at("claim").at("value").get<std::string>());
    cert.claim.strict = j.at("claim").at("strict").get<bool>();
    cert.norm = norm_from_name(j.at("norm").get<std::string>());
    cert.params = params_from_json(j.at("params"));
    cert.gamma = j.at("gamma").get<std::vector<std::size_t>>();
    for (const json& rec : j.at("evidence")) {
      PairEvidence e;
      e.i = rec.at("i").get<std::size_t>();
      e.j = rec.at("j").get<std::size_t>();
      e.value = norm_value_from_json(rec);
      cert.evidence.push_back(std::move(e));
    }
    const json& prov = j.at("provenance");
    cert.provenance.pipeline = prov.at("pipeline").get<std::string>();
    cert.provenance.parameters =
        prov.at("parameters").get<std::map<std::string, std::string>>();
    cert.provenance.stage_log =
        prov.at("stage_log").get<std::vector<std::string>>();
    return cert;
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw InputError("read failure on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out.good()) throw InputError("write failure on '" + path + "'");
}

}  // namespace adlab
