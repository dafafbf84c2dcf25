#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crq/propagation.hpp"

namespace crq {

/// All iterated-conditioning notions the suite reports on.
enum class OperatorKind { C, dF, F, K, L, B, S, gs };

std::string to_string(OperatorKind k);
std::optional<OperatorKind> operator_kind_from_string(const std::string& s);

/// Outcome of one property check for one operator; negative verdicts carry a
/// coherence-checked witness assessment.
struct Verdict {
  std::string property;      // "no_IE", "P1", "P2", "P3", "P4", or a rule name
  OperatorKind operator_kind;
  bool holds = false;
  std::optional<Assessment> counterexample;
  std::string note;
};

/// Whether the all-ones prevision assessment on the family is coherent.
/// Parameters the family references but does not assess (e.g. P(B|K) inside
/// an iterated conditional whose consequent is not a premise) are treated
/// existentially over a rational grid. Throws ValuesOutsideUnit when a member
/// cannot take values in [0,1] under the all-ones instantiation.
bool p_consistent(const std::vector<CrqPtr>& family,
                  const std::vector<EventPtr>& constraints = {});

/// True iff every coherent extension of the all-ones premise assessment
/// forces the conclusion's prevision to 1. Throws NotPConsistent when the
/// premises are not p-consistent.
bool p_entails(const std::vector<CrqPtr>& premises, const CrqPtr& conclusion,
               const std::vector<EventPtr>& constraints = {});

enum class InferenceRule { modus_ponens, centering };

std::string to_string(InferenceRule r);

/// Generalized Modus Ponens ({A|H, (B|K)|_i(A|H)} => B|K) or two-premise
/// centering ({A|H, B|K} => (B|K)|_i(A|H)) for one operator kind; verdicts
/// are computed through p_entails, never hard-coded. Kinds B and S are
/// rejected (their iterated conditionals leave [0,1]).
Verdict check_inference(InferenceRule rule, OperatorKind kind);

/// The full property table: for each of the eight operators, no-Import-Export,
/// P1, P2, P3 and P4, each verdict computed and each negative cell backed by
/// a coherent counterexample.
std::vector<Verdict> property_suite();

/// Numerical exhibit of the Lewis-style collapse: assuming Import-Export plus
/// total probability forces P(C|A) = P(C), while coherence alone admits
/// P(C|A) != P(C).
struct LewisRow {
  Rat p;            // P(C)
  Rat forced;       // P(C|A) forced by IE + total probability
  Rat alternative;  // a different P(C|A)
  bool alternative_coherent;
};

struct LewisTriviality {
  std::vector<LewisRow> rows;
  bool collapse_exhibited = false;
};

LewisTriviality lewis_triviality_demo();

}  // namespace crq
