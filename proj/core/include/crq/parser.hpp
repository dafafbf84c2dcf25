#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crq/quantity.hpp"

namespace crq {

// ---------------------------------------------------------------------------
// Expression surface syntax.
//
//   events:        A, TRUE, FALSE, !A, A & B, A or B, parentheses
//   conditionals:  B|K  (the former binds loosest; no chaining)
//   compounds:     (A|H) and_K (B|K)   and_L and_B and_S and_gs
//                  (A|H) or_K  (B|K)   ... or_gs
//   iterated:      (B|K) iter_C (A|H)  iter_dF iter_F iter_K iter_L iter_B
//                  iter_S iter_gs      (consequent first, antecedent second)
//   bindings:      P(expr) = 3/10      PV(expr) = 0.25     P(expr) = ?
//
// Parentheses are mandatory around the operands of compounds, so the grammar
// stays unambiguous. Decimals are converted to exact rationals.
// ---------------------------------------------------------------------------

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class Kind { Event, Conditional, Compound, Iter };
  Kind kind;
  EventPtr event;                    // Event
  EventPtr consequent, antecedent;   // Conditional
  std::string op;                    // Compound: "and_K".."or_gs"; Iter: "C".."gs"
  AstPtr lhs, rhs;                   // Compound/Iter operands
};

/// One line of an assessment file. A missing value marks the extension
/// target ("= ?").
struct Binding {
  bool prevision = false; // written PV(...) rather than P(...)
  AstPtr expr;
  std::optional<Rat> value;
};

AstPtr parse(const std::string& text);
std::string print(const AstPtr& ast);
bool ast_equal(const AstPtr& a, const AstPtr& b);

Binding parse_binding(const std::string& line);

/// Parses a whole file: one binding per line, '#' comments, blank lines.
std::vector<Binding> parse_bindings(const std::string& text);

/// Parses an event formula alone (for --constraints).
EventPtr parse_event(const std::string& text);

struct Elaborated {
  Assessment assessment;
  std::optional<std::string> target; // parameter of the "= ?" binding
};

/// Turns bindings into an assessment: one conditional object per binding,
/// parameters named by the canonical printed expression. Sub-expression
/// probabilities referenced by compound objects (e.g. P(A|H) inside an
/// iterated conditional) resolve to the bindings of those expressions.
Elaborated elaborate(const std::vector<Binding>& bindings,
                     const std::vector<EventPtr>& constraints = {});

/// The conditional object for a single expression with conventional
/// parameter names (x for the antecedent operand, y for the consequent, mu
/// for the object's own prevision), as used by table output.
CrqPtr table_object(const AstPtr& ast);

}  // namespace crq
