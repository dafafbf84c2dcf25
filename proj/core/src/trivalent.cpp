#include "crq/trivalent.hpp"

namespace crq {

std::string to_string(TrivalentValue v) {
  switch (v) {
    case TrivalentValue::True:
      return "true";
    case TrivalentValue::False:
      return "false";
    case TrivalentValue::Void:
      return "void";
  }
  return "?";
}

std::string to_string(ConjunctionKind k) {
  switch (k) {
    case ConjunctionKind::K:
      return "K";
    case ConjunctionKind::L:
      return "L";
    case ConjunctionKind::B:
      return "B";
    case ConjunctionKind::S:
      return "S";
  }
  return "?";
}

std::string to_string(TrivalentIterKind k) {
  switch (k) {
    case TrivalentIterKind::C:
      return "C";
    case TrivalentIterKind::dF:
      return "dF";
    case TrivalentIterKind::F:
      return "F";
  }
  return "?";
}

ConditionalEvent cond(EventPtr consequent, EventPtr antecedent,
                      const std::vector<EventPtr>& constraints) {
  if (!is_possible(antecedent, constraints))
    throw ImpossibleAntecedent("conditioning event " + to_string(antecedent) +
                               " is impossible");
  return ConditionalEvent{std::move(consequent), std::move(antecedent)};
}

TrivalentValue truth_value(const ConditionalEvent& ce, const World& world) {
  if (!evaluate(ce.antecedent, world)) return TrivalentValue::Void;
  return evaluate(ce.consequent, world) ? TrivalentValue::True : TrivalentValue::False;
}

TrivalentValue truth_value_mask(const ConditionalEvent& ce, const Universe& u,
                                std::uint32_t mask) {
  if (!evaluate_mask(ce.antecedent, u, mask)) return TrivalentValue::Void;
  return evaluate_mask(ce.consequent, u, mask) ? TrivalentValue::True
                                               : TrivalentValue::False;
}

ConditionalEvent negate(const ConditionalEvent& ce) {
  return ConditionalEvent{ev_not(ce.consequent), ce.antecedent};
}

namespace {

Universe universe_for(const ConditionalEvent& a, const ConditionalEvent& b,
                      const std::vector<EventPtr>& constraints) {
  std::vector<EventPtr> all{a.consequent, a.antecedent, b.consequent, b.antecedent};
  for (const auto& c : constraints) all.push_back(c);
  return Universe::over(all);
}

bool admissible(const Universe& u, std::uint32_t m, const std::vector<EventPtr>& constraints) {
  for (const auto& c : constraints)
    if (!evaluate_mask(c, u, m)) return false;
  return true;
}

}  // namespace

bool gn_implies(const ConditionalEvent& a, const ConditionalEvent& b,
                const std::vector<EventPtr>& constraints) {
  Universe u = universe_for(a, b, constraints);
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    if (!admissible(u, m, constraints)) continue;
    TrivalentValue va = truth_value_mask(a, u, m);
    TrivalentValue vb = truth_value_mask(b, u, m);
    if (va == TrivalentValue::True && vb != TrivalentValue::True) return false;
    if (vb == TrivalentValue::False && va != TrivalentValue::False) return false;
  }
  return true;
}

bool semantically_equal(const ConditionalEvent& a, const ConditionalEvent& b,
                        const std::vector<EventPtr>& constraints) {
  Universe u = universe_for(a, b, constraints);
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    if (!admissible(u, m, constraints)) continue;
    if (truth_value_mask(a, u, m) != truth_value_mask(b, u, m)) return false;
  }
  return true;
}

ConditionalEvent conjoin_trivalent(ConjunctionKind kind, const ConditionalEvent& a,
                                   const ConditionalEvent& b,
                                   const std::vector<EventPtr>& constraints) {
  const EventPtr& A = a.consequent;
  const EventPtr& H = a.antecedent;
  const EventPtr& B = b.consequent;
  const EventPtr& K = b.antecedent;
  EventPtr AH = ev_and(A, H);
  EventPtr BK = ev_and(B, K);
  EventPtr AHBK = ev_and(AH, BK);
  EventPtr nAH = ev_and(ev_not(A), H);
  EventPtr nBK = ev_and(ev_not(B), K);
  EventPtr nHnK = ev_and(ev_not(H), ev_not(K));

  EventPtr cons, ante;
  switch (kind) {
    case ConjunctionKind::K:
      cons = AHBK;
      ante = ev_or({ev_and(H, K), nAH, nBK});
      break;
    case ConjunctionKind::L:
      cons = AHBK;
      ante = ev_or({AHBK, nAH, nBK, nHnK});
      break;
    case ConjunctionKind::B:
      cons = AHBK;
      ante = ev_and(H, K);
      break;
    case ConjunctionKind::S:
      cons = ev_and(ev_or(AH, ev_not(H)), ev_or(BK, ev_not(K)));
      ante = ev_or(H, K);
      break;
  }
  return cond(cons, ante, constraints);
}

// The disjunctions are the De Morgan duals of the conjunctions. (For K, B
// and S this coincides with the usual displayed formulas; for L the dual is
// true when both operands are void, the strong Lukasiewicz disjunction.)
ConditionalEvent disjoin_trivalent(ConjunctionKind kind, const ConditionalEvent& a,
                                   const ConditionalEvent& b,
                                   const std::vector<EventPtr>& constraints) {
  return negate(conjoin_trivalent(kind, negate(a), negate(b), constraints));
}

ConditionalEvent iterate_trivalent(TrivalentIterKind kind, const ConditionalEvent& antecedent,
                                   const ConditionalEvent& consequent,
                                   const std::vector<EventPtr>& constraints) {
  const EventPtr& A = antecedent.consequent;
  const EventPtr& H = antecedent.antecedent;
  const EventPtr& B = consequent.consequent;
  const EventPtr& K = consequent.antecedent;

  switch (kind) {
    case TrivalentIterKind::C:
      return cond(B, ev_and(K, ev_or(ev_not(H), A)), constraints);
    case TrivalentIterKind::dF:
      return cond(B, ev_and(ev_and(A, H), K), constraints);
    case TrivalentIterKind::F: {
      EventPtr AHBK = ev_and(ev_and(A, H), ev_and(B, K));
      EventPtr AHnBK = ev_and(ev_and(A, H), ev_and(ev_not(B), K));
      EventPtr nHnBK = ev_and(ev_not(H), ev_and(ev_not(B), K));
      return cond(AHBK, ev_or({AHBK, AHnBK, nHnBK}), constraints);
    }
  }
  throw UnsupportedKind("unknown trivalent iterated conditional kind");
}

}  // namespace crq
