#pragma once

#include <string>

#include "json.hpp"
#include "tstack/hodgecharts.hpp"
#include "tstack/orbicoh.hpp"
#include "tstack/structure.hpp"

namespace tstack {

using Json = nlohmann::ordered_json;

/// Parsed input document: exactly one of the two kinds is populated.
struct InputDocument {
  enum class Kind { StackyFan, NilpotentGenerators };
  Kind kind = Kind::StackyFan;
  ExtendedStackyFan esf;
  NilpotentGenerators generators;
  MTFanChoice fan_choice;
  std::string summary;
};

/// Strict, fail-closed parse: unknown fields and missing fields are
/// SchemaError; dimension mismatches are InvariantError.
InputDocument parseInput(const Json& doc);

Json toJson(const Int& v);
Json toJson(const IntVec& v);
Json toJson(const IntMat& m);
Json toJson(const FgAbGroup& g);
Json toJson(const DiagonalizableGroup& g);
Json toJson(const StackyFan& sf);
Json stackyFanDocument(const ExtendedStackyFan& esf);  // input-schema shaped

struct CommandOptions {
  Rat max_degree = Rat(20);
  Index truncation_radius = 0;  // 0 = automatic
  BaseMode base = BaseMode::Point;
  std::string format = "json";  // "json" | "text"
};

struct CommandResult {
  Json report;       // deterministic JSON payload
  std::string text;  // plain-text rendering of the same report
  int exit_code = 0;
};

/// Dispatches a CLI verb (validate | group | torus | decompose | cohomology |
/// chart | mtstack) on a parsed document.
CommandResult runCommand(const std::string& verb, const Json& inputDoc,
                         const CommandOptions& options);

/// 64-bit FNV-1a of the canonical serialization, rendered as fnv1a:<hex>.
std::string documentHash(const Json& doc);

}  // namespace tstack
