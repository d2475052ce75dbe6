#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tstack {

enum class ErrorKind {
  // polyhedral
  ZeroVector,
  DimensionTooLarge,
  NotPointed,
  NotPure,
  NonPointedCone,
  BadIntersection,
  UnusedRay,
  // stacky fans
  NonFiniteCokernel,
  InvalidFan,
  NonSimplicialInput,
  RayMismatch,
  // structure
  RayImageZero,
  NotOrbifold,
  RaysDoNotSpan,
  NotAGerbe,
  NonInjectiveRigidification,
  CoxFormRequired,
  // orbifold cohomology
  NotSimplicial,
  SupportOutsideFan,
  NotComplete,
  NotStabilized,
  // hodge charts
  NotNilpotent,
  NotCommuting,
  ZeroGenerator,
  NotAFace,
  // cli
  SchemaError,
  InvariantError,
};

const char* errorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Violation {
  ErrorKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(ErrorKind kind, std::string detail) { violations.push_back({kind, std::move(detail)}); }
  /// Throws the first violation as an Error; no-op when valid.
  void require() const {
    if (!ok()) throw Error(violations.front().kind, violations.front().detail);
  }
};

}  // namespace tstack
