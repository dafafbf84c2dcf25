#pragma once

#include <stdexcept>
#include <string>

namespace crq {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownAtom : Error {
  explicit UnknownAtom(const std::string& name)
      : Error("unknown atom: " + name) {}
};

struct EmptyFamily : Error {
  EmptyFamily() : Error("family of conditional objects is empty") {}
};

struct ImpossibleAntecedent : Error {
  explicit ImpossibleAntecedent(const std::string& what = "conditioning event is impossible")
      : Error(what) {}
};

struct UnboundParam : Error {
  explicit UnboundParam(const std::string& name)
      : Error("parameter not bound: " + name) {}
};

struct InfeasibleSystem : Error {
  InfeasibleSystem() : Error("system Sigma is infeasible") {}
};

struct BaseIncoherent : Error {
  BaseIncoherent() : Error("base assessment (target removed) is incoherent") {}
};

struct MultipleUnbound : Error {
  explicit MultipleUnbound(const std::string& what)
      : Error("expected exactly one unbound parameter: " + what) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& what) : Error(what) {}
};

struct NotPConsistent : Error {
  NotPConsistent() : Error("premise family is not p-consistent") {}
};

struct ValuesOutsideUnit : Error {
  explicit ValuesOutsideUnit(const std::string& what)
      : Error("random quantity takes values outside [0,1]: " + what) {}
};

struct UnsupportedKind : Error {
  explicit UnsupportedKind(const std::string& what) : Error(what) {}
};

struct SyntaxError : Error {
  SyntaxError(int line, int column, const std::string& what)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace crq
