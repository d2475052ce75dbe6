#include "tstack/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tstack {

namespace {

[[noreturn]] void schemaError(const std::string& field, const std::string& reason) {
  throw Error(ErrorKind::SchemaError, field + ": " + reason);
}

void requireFields(const Json& obj, const std::string& where,
                   const std::set<std::string>& required, const std::set<std::string>& optional) {
  if (!obj.is_object()) schemaError(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key))
      schemaError(where + "." + key, "unknown field");
  }
  for (const std::string& key : required)
    if (!obj.contains(key)) schemaError(where + "." + key, "missing field");
}

Int parseInt(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      schemaError(field, "not an integer string");
    }
  }
  schemaError(field, "expected an integer");
}

IntVec parseVec(const Json& j, const std::string& field, Index expected = -1) {
  if (!j.is_array()) schemaError(field, "expected an array");
  IntVec v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = parseInt(j[i], field + "[" + std::to_string(i) + "]");
  if (expected >= 0 && v.size() != expected)
    throw Error(ErrorKind::InvariantError,
                field + " has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(expected));
  return v;
}

IntMat parseMat(const Json& j, const std::string& field, Index rows = -1, Index cols = -1) {
  if (!j.is_array()) schemaError(field, "expected an array of rows");
  Index r = static_cast<Index>(j.size());
  Index c = cols;
  if (r == 0) {
    if (rows > 0) throw Error(ErrorKind::InvariantError, field + " must have " + std::to_string(rows) + " rows");
    return IntMat(0, std::max<Index>(c, 0));
  }
  std::vector<IntVec> rowsVec;
  for (size_t i = 0; i < j.size(); ++i) {
    IntVec row = parseVec(j[i], field + "[" + std::to_string(i) + "]");
    if (c < 0)
      c = row.size();
    else if (row.size() != c)
      throw Error(ErrorKind::InvariantError, field + " has ragged rows");
    rowsVec.push_back(std::move(row));
  }
  if (rows >= 0 && r != rows)
    throw Error(ErrorKind::InvariantError,
                field + " has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
  IntMat m(r, c);
  for (Index i = 0; i < r; ++i) m.row(i) = rowsVec[static_cast<size_t>(i)].transpose();
  return m;
}

std::vector<std::vector<int>> parseConeList(const Json& j, const std::string& field) {
  if (!j.is_array()) schemaError(field, "expected an array of index sets");
  std::vector<std::vector<int>> cones;
  for (size_t ci = 0; ci < j.size(); ++ci) {
    const Json& cj = j[ci];
    if (!cj.is_array()) schemaError(field + "[" + std::to_string(ci) + "]", "expected an index array");
    std::vector<int> cone;
    for (size_t k = 0; k < cj.size(); ++k) {
      if (!cj[k].is_number_integer())
        schemaError(field + "[" + std::to_string(ci) + "][" + std::to_string(k) + "]",
                    "expected an integer index");
      cone.push_back(cj[k].get<int>());
    }
    std::sort(cone.begin(), cone.end());
    cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
    cones.push_back(std::move(cone));
  }
  return cones;
}

FgTarget parseTarget(const Json& j) {
  requireFields(j, "target", {}, {"free_rank", "torsion", "presentation"});
  if (j.contains("presentation")) {
    if (j.contains("free_rank") || j.contains("torsion"))
      schemaError("target", "give either a presentation or free_rank/torsion, not both");
    IntMat q = parseMat(j["presentation"], "target.presentation");
    return FgTarget::fromPresentation(q);
  }
  if (!j.contains("free_rank")) schemaError("target.free_rank", "missing field");
  Int fr = parseInt(j["free_rank"], "target.free_rank");
  if (fr < 0) schemaError("target.free_rank", "must be nonnegative");
  std::vector<Int> torsion;
  if (j.contains("torsion")) {
    if (!j["torsion"].is_array()) schemaError("target.torsion", "expected an array");
    for (size_t i = 0; i < j["torsion"].size(); ++i) {
      Int d = parseInt(j["torsion"][i], "target.torsion[" + std::to_string(i) + "]");
      if (d < 2) throw Error(ErrorKind::InvariantError, "torsion divisors must be >= 2");
      torsion.push_back(d);
    }
  }
  Index rank = fr.convert_to<Index>();
  return torsion.empty() ? FgTarget::lattice(rank) : FgTarget::withTorsion(rank, torsion);
}

Json targetJson(const FgTarget& t) {
  // Emit the torsion form when the presentation is the canonical diagonal
  // one; otherwise echo the presentation matrix.
  const IntMat& q = t.presentation();
  bool diagForm = true;
  Index tors = q.cols();
  if (t.generatorCount() != t.freeRank() + tors) diagForm = false;
  if (diagForm)
    for (Index i = 0; i < q.rows() && diagForm; ++i)
      for (Index j = 0; j < q.cols() && diagForm; ++j) {
        if (i == t.freeRank() + j) {
          if (q(i, j) < 2) diagForm = false;
        } else if (q(i, j) != 0) {
          diagForm = false;
        }
      }
  Json out = Json::object();
  if (diagForm) {
    out["free_rank"] = static_cast<long long>(t.freeRank());
    Json torsion = Json::array();
    for (Index j = 0; j < q.cols(); ++j) torsion.push_back(toJson(q(t.freeRank() + j, j)));
    out["torsion"] = torsion;
  } else {
    out["presentation"] = toJson(q);
  }
  return out;
}

Json violationsJson(const ValidationReport& report) {
  Json arr = Json::array();
  for (const Violation& v : report.violations) {
    Json item = Json::object();
    item["kind"] = errorKindName(v.kind);
    item["detail"] = v.detail;
    arr.push_back(item);
  }
  return arr;
}

Json ringElementJson(const RingElement& r) {
  Json terms = Json::array();
  for (const auto& [c, coeff] : r.terms) {
    Json term = Json::object();
    term["monomial"] = toJson(c);
    term["coeff"] = toString(coeff);
    terms.push_back(term);
  }
  Json out = Json::object();
  out["terms"] = terms;
  return out;
}

Json boxElementJson(const BoxElement& b) {
  Json out = Json::object();
  out["c"] = toJson(b.c);
  Json cone = Json::array();
  for (int i : b.cone) cone.push_back(i);
  out["cone"] = cone;
  Json q = Json::array();
  for (const Rat& qi : b.q) q.push_back(toString(qi));
  out["q"] = q;
  out["age"] = toString(b.age);
  return out;
}

}  // namespace

Json toJson(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  return Json(v.str());
}

Json toJson(const IntVec& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(toJson(v(i)));
  return arr;
}

Json toJson(const IntMat& m) {
  Json arr = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(toJson(m(i, j)));
    arr.push_back(row);
  }
  return arr;
}

Json toJson(const FgAbGroup& g) {
  Json out = Json::object();
  out["free_rank"] = static_cast<long long>(g.free_rank);
  Json factors = Json::array();
  for (const Int& d : g.invariant_factors) factors.push_back(toJson(d));
  out["invariant_factors"] = factors;
  out["render"] = g.render();
  return out;
}

Json toJson(const DiagonalizableGroup& g) {
  Json out = Json::object();
  out["torus_rank"] = static_cast<long long>(g.torus_rank);
  Json factors = Json::array();
  for (const Int& d : g.finite_part.invariant_factors) factors.push_back(toJson(d));
  out["finite_factors"] = factors;
  out["render"] = g.render();
  return out;
}

Json toJson(const StackyFan& sf) {
  Json out = Json::object();
  out["lattice_rank"] = static_cast<long long>(sf.lattice_rank);
  Json rays = Json::array();
  for (const IntVec& r : sf.fan.rays) rays.push_back(toJson(r));
  out["rays"] = rays;
  Json cones = Json::array();
  for (const auto& cone : sf.fan.max_cones) {
    Json cj = Json::array();
    for (int i : cone) cj.push_back(i);
    cones.push_back(cj);
  }
  out["max_cones"] = cones;
  out["target"] = targetJson(sf.target);
  out["beta"] = toJson(sf.beta);
  return out;
}

Json stackyFanDocument(const ExtendedStackyFan& esf) {
  Json out = Json::object();
  out["schema_version"] = 1;
  out["kind"] = "stacky_fan";
  Json sf = toJson(esf.base);
  for (auto& [key, value] : sf.items()) out[key] = value;
  Json extended = Json::array();
  for (const IntVec& e : esf.extra) extended.push_back(toJson(e));
  out["extended"] = extended;
  return out;
}

InputDocument parseInput(const Json& doc) {
  if (!doc.is_object()) schemaError("$", "input must be a JSON object");
  if (!doc.contains("schema_version")) schemaError("schema_version", "missing field");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)
    schemaError("schema_version", "unsupported version");
  if (!doc.contains("kind") || !doc["kind"].is_string()) schemaError("kind", "missing or non-string");
  std::string kind = doc["kind"].get<std::string>();

  InputDocument input;
  if (kind == "stacky_fan") {
    requireFields(doc, "$", {"schema_version", "kind", "lattice_rank", "rays", "max_cones", "target", "beta"},
                  {"extended"});
    input.kind = InputDocument::Kind::StackyFan;
    Int rank = parseInt(doc["lattice_rank"], "lattice_rank");
    if (rank < 0) schemaError("lattice_rank", "must be nonnegative");
    StackyFan& sf = input.esf.base;
    sf.lattice_rank = rank.convert_to<Index>();
    sf.fan.ambient_rank = sf.lattice_rank;
    if (!doc["rays"].is_array()) schemaError("rays", "expected an array");
    for (size_t i = 0; i < doc["rays"].size(); ++i)
      sf.fan.rays.push_back(parseVec(doc["rays"][i], "rays[" + std::to_string(i) + "]", sf.lattice_rank));
    sf.fan.max_cones = parseConeList(doc["max_cones"], "max_cones");
    sf.target = parseTarget(doc["target"]);
    sf.beta = parseMat(doc["beta"], "beta", sf.target.generatorCount(), sf.lattice_rank);
    if (doc.contains("extended")) {
      if (!doc["extended"].is_array()) schemaError("extended", "expected an array");
      for (size_t i = 0; i < doc["extended"].size(); ++i)
        input.esf.extra.push_back(parseVec(doc["extended"][i], "extended[" + std::to_string(i) + "]",
                                           sf.target.generatorCount()));
    }
    std::ostringstream os;
    os << "stacky fan: lattice rank " << sf.lattice_rank << ", " << sf.fan.rays.size() << " rays, "
       << sf.fan.max_cones.size() << " maximal cones";
    if (!input.esf.extra.empty()) os << ", " << input.esf.extra.size() << " extended vectors";
    input.summary = os.str();
    return input;
  }
  if (kind == "nilpotent_generators") {
    requireFields(doc, "$", {"schema_version", "kind", "size", "nilpotents"}, {"fan"});
    input.kind = InputDocument::Kind::NilpotentGenerators;
    Int size = parseInt(doc["size"], "size");
    if (size < 1) schemaError("size", "must be positive");
    input.generators.size = size.convert_to<Index>();
    if (!doc["nilpotents"].is_array() || doc["nilpotents"].empty())
      schemaError("nilpotents", "expected a nonempty array of matrices");
    for (size_t i = 0; i < doc["nilpotents"].size(); ++i)
      input.generators.mats.push_back(parseMat(doc["nilpotents"][i],
                                               "nilpotents[" + std::to_string(i) + "]",
                                               input.generators.size, input.generators.size));
    input.fan_choice = MTFanChoice::faces_of_sigma();
    if (doc.contains("fan")) {
      const Json& fj = doc["fan"];
      if (fj.is_string()) {
        if (fj.get<std::string>() != "faces") schemaError("fan", "expected \"faces\" or a face list");
      } else {
        input.fan_choice = MTFanChoice::explicitFaces(parseConeList(fj, "fan"));
      }
    }
    std::ostringstream os;
    os << "nilpotent generators: " << input.generators.mats.size() << " matrices of size "
       << input.generators.size << "x" << input.generators.size;
    input.summary = os.str();
    return input;
  }
  schemaError("kind", "expected stacky_fan or nilpotent_generators");
}

std::string documentHash(const Json& doc) {
  std::string canonical = doc.dump();
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << hash;
  return os.str();
}

namespace {

void requireKind(const InputDocument& input, InputDocument::Kind want, const std::string& verb) {
  if (input.kind != want)
    throw Error(ErrorKind::SchemaError, verb + " expects a " +
                                            (want == InputDocument::Kind::StackyFan
                                                 ? std::string("stacky_fan")
                                                 : std::string("nilpotent_generators")) +
                                            " document");
}

Json gradedDimsJson(const GradedDims& g) {
  Json out = Json::object();
  Json dims = Json::array();
  for (const auto& [deg, dim] : g.dims) {
    Json item = Json::object();
    item["degree"] = toString(deg);
    item["dim"] = static_cast<long long>(dim);
    dims.push_back(item);
  }
  out["dims"] = dims;
  out["total"] = static_cast<long long>(g.total());
  out["truncation_radius"] = static_cast<long long>(g.truncation_radius);
  out["stabilized"] = g.stabilized;
  return out;
}

std::string describeVerb(const std::string& verb) { return verb; }

}  // namespace

CommandResult runCommand(const std::string& verb, const Json& inputDoc,
                         const CommandOptions& options) {
  CommandResult result;
  Json report = Json::object();
  report["schema_version"] = 1;
  report["verb"] = describeVerb(verb);

  InputDocument input = parseInput(inputDoc);
  Json inputEcho = Json::object();
  inputEcho["hash"] = documentHash(inputDoc);
  inputEcho["summary"] = input.summary;
  report["input"] = inputEcho;

  Json payload = Json::object();
  Json warnings = Json::array();
  std::ostringstream text;
  text << "verb: " << verb << "\n" << "input: " << input.summary << "\n";

  if (verb == "validate") {
    ValidationReport vr = input.kind == InputDocument::Kind::StackyFan
                              ? validate(input.esf)
                              : validateGenerators(input.generators);
    payload["valid"] = vr.ok();
    payload["violations"] = violationsJson(vr);
    text << "valid: " << (vr.ok() ? "yes" : "no") << "\n";
    for (const Violation& v : vr.violations)
      text << "violation: " << errorKindName(v.kind) << ": " << v.detail << "\n";
    if (!vr.ok()) result.exit_code = 1;
  } else if (verb == "group") {
    requireKind(input, InputDocument::Kind::StackyFan, verb);
    GaleDualData gd = galeDual(input.esf);
    payload["dg_group"] = toJson(gd.dg_group);
    Json chars = Json::array();
    for (const IntVec& c : gd.action_characters) chars.push_back(toJson(c));
    payload["action_characters"] = chars;
    DiagonalizableGroup g = dualGroup(gd.dg_group);
    payload["structure_group"] = toJson(g);
    text << "DG(beta) = " << gd.dg_group.render() << "\n";
    text << "G = " << g.render() << "\n";
    text << "action characters:";
    for (const IntVec& c : gd.action_characters) text << " " << toString(c);
    text << "\n";
  } else if (verb == "torus") {
    requireKind(input, InputDocument::Kind::StackyFan, verb);
    DMTorusData dm = dmTorus(input.esf.base);
    payload["torus_rank"] = static_cast<long long>(dm.torus_rank);
    payload["finite_group"] = toJson(dm.finite_group);
    payload["is_orbifold"] = isOrbifold(input.esf.base);
    text << "DM torus: T^" << dm.torus_rank << " x B(" << dm.finite_group.render() << ")\n";
    text << "orbifold: " << (isOrbifold(input.esf.base) ? "yes" : "no") << "\n";
  } else if (verb == "decompose") {
    requireKind(input, InputDocument::Kind::StackyFan, verb);
    DecompositionReport dr = decompositionReport(input.esf.base);
    Json mult = Json::array();
    for (const Int& a : dr.multiplicities.a) mult.push_back(toJson(a));
    payload["multiplicities"] = mult;
    Json inMult = Json::array();
    for (const Int& a : dr.input_multiplicities.a) inMult.push_back(toJson(a));
    payload["input_multiplicities"] = inMult;
    Json gerbe = Json::object();
    Json bArr = Json::array();
    for (const Int& b : dr.gerbe.b) bArr.push_back(toJson(b));
    gerbe["b"] = bArr;
    gerbe["d"] = toJson(dr.gerbe.d);
    Json reps = Json::array();
    for (const IntVec& r : dr.gerbe.class_reps) reps.push_back(toJson(r));
    gerbe["class_reps"] = reps;
    gerbe["rig_class_group"] = toJson(dr.gerbe.rig_class_group);
    payload["gerbe"] = gerbe;
    payload["rigidified"] = toJson(dr.rigidified);
    payload["canonical"] = toJson(dr.canonical);
    Json factors = Json::array();
    for (const StackyFan& f : dr.factors) factors.push_back(toJson(f));
    payload["factors"] = factors;
    payload["rendering"] = dr.rendering;
    for (const std::string& w : dr.warnings) warnings.push_back(w);
    text << dr.rendering;
  } else if (verb == "cohomology") {
    requireKind(input, InputDocument::Kind::StackyFan, verb);
    CohomologyPresentation pres = presentation(input.esf, options.base);
    Json gens = Json::object();
    Json rayGens = Json::array();
    for (const IntVec& g : pres.ray_generators) rayGens.push_back(toJson(g));
    gens["rays"] = rayGens;
    Json extGens = Json::array();
    for (const IntVec& g : pres.extended_generators) extGens.push_back(toJson(g));
    gens["extended"] = extGens;
    Json boxGens = Json::array();
    for (const BoxElement& b : pres.box_generators) boxGens.push_back(boxElementJson(b));
    gens["box"] = boxGens;
    payload["generators"] = gens;
    Json rels = Json::array();
    for (size_t k = 0; k < pres.linear_relations.size(); ++k) {
      Json rel = ringElementJson(pres.linear_relations[k]);
      if (!pres.base_symbols.empty()) rel["base_symbol"] = pres.base_symbols[k];
      rels.push_back(rel);
    }
    payload["relations"] = rels;
    Json vanish = Json::array();
    for (const auto& [i, j] : pres.vanishing_pairs) {
      Json pair = Json::array();
      pair.push_back(i);
      pair.push_back(j);
      vanish.push_back(pair);
    }
    payload["vanishing_pairs"] = vanish;
    text << pres.rendering;
    if (options.base == BaseMode::Point) {
      GradedDims dims = gradedDimensions(input.esf, options.max_degree, options.truncation_radius);
      payload["graded_dims"] = gradedDimsJson(dims);
      if (!dims.stabilized) warnings.push_back("graded dimensions did not stabilize at the radius cap");
      text << "graded dims (degree: dim):";
      for (const auto& [deg, dim] : dims.dims) text << " " << toString(deg) << ": " << dim << ";";
      text << " total " << dims.total() << (dims.stabilized ? "" : " (not stabilized)") << "\n";
    }
  } else if (verb == "chart") {
    requireKind(input, InputDocument::Kind::NilpotentGenerators, verb);
    ExpIntegrality ei = expIntegrality(input.generators);
    Json expJson = Json::array();
    for (const auto& entry : ei.entries) {
      Json item = Json::object();
      item["label"] = entry.label;
      item["integral"] = entry.integral;
      expJson.push_back(item);
    }
    payload["exp_integrality"] = expJson;
    for (const std::string& w : ei.warnings) warnings.push_back(w);
    MonodromyCone mc = monodromyCone(input.generators);
    payload["lambda_rank"] = static_cast<long long>(mc.span_lattice.cols());
    payload["span_lattice"] = toJson(mc.span_lattice);
    Json coneGens = Json::array();
    for (const IntVec& g : mc.flattened_cone.generators) coneGens.push_back(toJson(g));
    payload["cone_generators"] = coneGens;
    MonoidChart ch = chart(mc);
    Json hb = Json::array();
    for (const IntVec& e : ch.dual_hilbert_basis.elements) hb.push_back(toJson(e));
    payload["dual_hilbert_basis"] = hb;
    payload["relation_lattice"] = toJson(ch.relation_lattice);
    payload["torus_rank"] = static_cast<long long>(ch.torus_rank);
    payload["rendering"] = ch.rendering;
    text << ch.rendering;
    for (const auto& entry : ei.entries)
      text << entry.label << ": " << (entry.integral ? "integral" : "NOT integral") << "\n";
  } else if (verb == "mtstack") {
    requireKind(input, InputDocument::Kind::NilpotentGenerators, verb);
    MTStackReport rep = mtStackyFan(input.generators, input.fan_choice);
    payload["stacky_fan"] = toJson(rep.stacky_fan);
    payload["is_rigid"] = rep.is_rigid;
    Json idx = Json::array();
    for (const Int& b : rep.image_index_factors) idx.push_back(toJson(b));
    payload["image_index_factors"] = idx;
    Json mult = Json::array();
    for (const Int& a : rep.multiplicities.a) mult.push_back(toJson(a));
    payload["multiplicities"] = mult;
    Json factors = Json::array();
    for (const StackyFan& f : rep.factors) factors.push_back(toJson(f));
    payload["factors"] = factors;
    payload["rendering"] = rep.rendering;
    for (const std::string& w : rep.warnings) warnings.push_back(w);
    text << rep.rendering;
  } else {
    throw Error(ErrorKind::SchemaError, "unknown verb " + verb);
  }

  report["result"] = payload;
  report["warnings"] = warnings;
  for (const auto& w : warnings) text << "warning: " << w.get<std::string>() << "\n";
  result.report = report;
  result.text = text.str();
  return result;
}

}  // namespace tstack
