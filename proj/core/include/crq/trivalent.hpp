#pragma once

#include <string>
#include <vector>

#include "crq/events.hpp"

namespace crq {

enum class TrivalentValue { True, False, Void };

std::string to_string(TrivalentValue v);

/// A conditional event A|H: true on AH, false on (not A)H, void on (not H).
/// A|TRUE embeds the unconditional event A.
struct ConditionalEvent {
  EventPtr consequent;
  EventPtr antecedent;
};

/// Builds A|H, checking that H is possible under the given constraints.
ConditionalEvent cond(EventPtr consequent, EventPtr antecedent,
                      const std::vector<EventPtr>& constraints = {});

TrivalentValue truth_value(const ConditionalEvent& ce, const World& world);
TrivalentValue truth_value_mask(const ConditionalEvent& ce, const Universe& u,
                                std::uint32_t mask);

/// not(A|H) = (not A)|H; an involution.
ConditionalEvent negate(const ConditionalEvent& ce);

/// Goodman-Nguyen inclusion: AH implies BK and (not B)K implies (not A)H,
/// decided by world enumeration under the constraints.
bool gn_implies(const ConditionalEvent& a, const ConditionalEvent& b,
                const std::vector<EventPtr>& constraints = {});

/// Equality of conditional events is semantic: identical trivalent valuation
/// on every world permitted by the constraints.
bool semantically_equal(const ConditionalEvent& a, const ConditionalEvent& b,
                        const std::vector<EventPtr>& constraints = {});

/// The four trivalent conjunctions: Kleene-Lukasiewicz-Heyting-de Finetti,
/// Lukasiewicz, Bochvar internal, Sobocinski (quasi conjunction).
enum class ConjunctionKind { K, L, B, S };

std::string to_string(ConjunctionKind k);

ConditionalEvent conjoin_trivalent(ConjunctionKind kind, const ConditionalEvent& a,
                                   const ConditionalEvent& b,
                                   const std::vector<EventPtr>& constraints = {});

/// De Morgan duals of the conjunctions.
ConditionalEvent disjoin_trivalent(ConjunctionKind kind, const ConditionalEvent& a,
                                   const ConditionalEvent& b,
                                   const std::vector<EventPtr>& constraints = {});

/// The three conditional-event-valued iterated conditionals:
/// Cooper-Calabrese, de Finetti, Farrell.
enum class TrivalentIterKind { C, dF, F };

std::string to_string(TrivalentIterKind k);

/// (consequent)|_kind(antecedent) as a conditional event. For B|K and A|H:
///   C : B | (K and (not H or A))
///   dF: B | (A and H and K)
///   F : AHBK | (AHBK or AH(not B)K or (not H)(not B)K)
ConditionalEvent iterate_trivalent(TrivalentIterKind kind, const ConditionalEvent& antecedent,
                                   const ConditionalEvent& consequent,
                                   const std::vector<EventPtr>& constraints = {});

}  // namespace crq
