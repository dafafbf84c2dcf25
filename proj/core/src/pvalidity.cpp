#include "crq/pvalidity.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "crq/errors.hpp"

namespace crq {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::C: return "C";
    case OperatorKind::dF: return "dF";
    case OperatorKind::F: return "F";
    case OperatorKind::K: return "K";
    case OperatorKind::L: return "L";
    case OperatorKind::B: return "B";
    case OperatorKind::S: return "S";
    case OperatorKind::gs: return "gs";
  }
  return "?";
}

std::optional<OperatorKind> operator_kind_from_string(const std::string& s) {
  static const std::pair<const char*, OperatorKind> table[] = {
      {"C", OperatorKind::C}, {"dF", OperatorKind::dF}, {"F", OperatorKind::F},
      {"K", OperatorKind::K}, {"L", OperatorKind::L},   {"B", OperatorKind::B},
      {"S", OperatorKind::S}, {"gs", OperatorKind::gs},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  return std::nullopt;
}

std::string to_string(InferenceRule r) {
  return r == InferenceRule::modus_ponens ? "modus_ponens" : "centering";
}

namespace {

bool is_trivalent(OperatorKind k) {
  return k == OperatorKind::C || k == OperatorKind::dF || k == OperatorKind::F;
}

TrivalentIterKind trivalent_kind(OperatorKind k) {
  switch (k) {
    case OperatorKind::C: return TrivalentIterKind::C;
    case OperatorKind::dF: return TrivalentIterKind::dF;
    default: return TrivalentIterKind::F;
  }
}

StructuralIterKind structural_kind(OperatorKind k) {
  switch (k) {
    case OperatorKind::K: return StructuralIterKind::K;
    case OperatorKind::L: return StructuralIterKind::L;
    case OperatorKind::B: return StructuralIterKind::B;
    case OperatorKind::S: return StructuralIterKind::S;
    default: return StructuralIterKind::gs;
  }
}

// The conjunction each operator's own logic pairs with: Cooper-Calabrese
// lives with the Sobocinski conjunction, de Finetti and Farrell with the
// Kleene one, the structural kinds with their namesakes.
ConjunctionKind partner_conjunction(OperatorKind k) {
  switch (k) {
    case OperatorKind::C: return ConjunctionKind::S;
    case OperatorKind::dF:
    case OperatorKind::F: return ConjunctionKind::K;
    case OperatorKind::K: return ConjunctionKind::K;
    case OperatorKind::L: return ConjunctionKind::L;
    case OperatorKind::B: return ConjunctionKind::B;
    default: return ConjunctionKind::S;
  }
}

const Param kX{"x", ParamRole::probability};
const Param kY{"y", ParamRole::probability};
const Param kZ{"z", ParamRole::prevision};
const Param kMu{"mu", ParamRole::prevision};
const Param kNu{"nu", ParamRole::prevision};

struct Stage {
  ConditionalEvent AH = cond(ev_atom("A"), ev_atom("H"));
  ConditionalEvent BK = cond(ev_atom("B"), ev_atom("K"));

  CrqPtr iter(OperatorKind k, const Param& mu = kMu) const {
    if (is_trivalent(k))
      return indicator(iterate_trivalent(trivalent_kind(k), AH, BK), mu);
    return iterate_structural(structural_kind(k), AH, BK, kX, kY, mu);
  }

  CrqPtr conj(OperatorKind k, const Param& z = kZ) const {
    if (k == OperatorKind::gs) return conjoin_gs(AH, BK, kX, kY, z);
    return indicator(conjoin_trivalent(partner_conjunction(k), AH, BK), z);
  }
};

bool coherent(const Assessment& a) { return check_coherence(a).coherent; }

// Returns the assessment if the engine confirms it coherent.
std::optional<Assessment> verified(const Assessment& a) {
  if (coherent(a)) return a;
  return std::nullopt;
}

}  // namespace

bool p_consistent(const std::vector<CrqPtr>& family,
                  const std::vector<EventPtr>& constraints) {
  if (family.empty()) throw EmptyFamily();

  Assessment base;
  base.family = family;
  base.constraints = constraints;
  std::set<std::string> bound;
  for (const auto& obj : family) {
    base.values[obj->prevision.name] = 1;
    bound.insert(obj->prevision.name);
  }
  std::vector<std::string> dangling;
  for (const auto& obj : family)
    for (const auto& p : obj->all_params())
      if (!bound.count(p) &&
          std::find(dangling.begin(), dangling.end(), p) == dangling.end())
        dangling.push_back(p);

  auto values_in_unit = [&](const Assessment& a) {
    std::map<std::string, Rat> full = a.values;
    for (const auto& obj : a.family)
      for (const auto& comp : obj->companions) {
        Rat v(1);
        for (const auto& p : comp.product_params) v *= full.at(p);
        full[comp.object->prevision.name] = v;
      }
    for (const auto& obj : a.family) {
      for (const auto& [region, value] : obj->pieces) {
        if (!is_possible(region, a.constraints)) continue;
        Rat v = value.evaluate(full);
        if (v < 0 || v > 1) return false;
      }
    }
    return true;
  };

  // Enumerate candidate bindings for parameters the family references but
  // does not assess (an existential witness suffices).
  std::vector<Assessment> candidates;
  std::vector<Rat> grid;
  for (int k = 8; k >= 0; --k) grid.push_back(rat(k, 8));
  std::vector<std::size_t> pos(dangling.size(), 0);
  for (;;) {
    Assessment a = base;
    for (std::size_t i = 0; i < dangling.size(); ++i) a.values[dangling[i]] = grid[pos[i]];
    candidates.push_back(std::move(a));
    std::size_t i = 0;
    for (; i < dangling.size(); ++i) {
      if (++pos[i] < grid.size()) break;
      pos[i] = 0;
    }
    if (i == dangling.size()) break;
    if (dangling.empty()) break;
  }

  bool any_in_unit = false;
  for (const auto& a : candidates) {
    if (!values_in_unit(a)) continue;
    any_in_unit = true;
    if (coherent(a)) return true;
  }
  if (!any_in_unit)
    throw ValuesOutsideUnit(family.front()->label + " family at the all-ones assessment");
  return false;
}

bool p_entails(const std::vector<CrqPtr>& premises, const CrqPtr& conclusion,
               const std::vector<EventPtr>& constraints) {
  if (!p_consistent(premises, constraints)) throw NotPConsistent();

  Assessment a;
  a.constraints = constraints;
  for (const auto& p : premises) a.assess(p, 1);
  a.family.push_back(conclusion);
  const std::string target = conclusion->prevision.name;

  auto coh = [&](const Rat& v) {
    Assessment tmp = a;
    tmp.values[target] = v;
    return coherent(tmp);
  };

  if (!coh(1)) return false; // 1 itself must be coherent for a p-valid rule
  const std::vector<Rat> probes{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(7, 8),
                                Rat(999999, 1000000)};
  for (const Rat& v : probes)
    if (coh(v)) return false;
  return true;
}

Verdict check_inference(InferenceRule rule, OperatorKind kind) {
  if (kind == OperatorKind::B || kind == OperatorKind::S)
    throw UnsupportedKind("p-validity is meaningless for |_" + to_string(kind) +
                          ": values leave [0,1]");
  Stage st;
  Verdict v;
  v.property = to_string(rule);
  v.operator_kind = kind;

  CrqPtr xobj = indicator(st.AH, kX);
  CrqPtr yobj = indicator(st.BK, kY);
  CrqPtr iter = st.iter(kind);

  std::vector<CrqPtr> premises;
  CrqPtr conclusion;
  if (rule == InferenceRule::modus_ponens) {
    premises = {xobj, iter};
    conclusion = yobj;
  } else {
    premises = {xobj, yobj};
    conclusion = iter;
  }
  v.holds = p_entails(premises, conclusion);
  if (!v.holds) {
    for (const Rat& cval : {Rat(0), Rat(1, 2), Rat(1, 4)}) {
      Assessment a;
      for (const auto& p : premises) a.assess(p, 1);
      a.assess(conclusion, cval);
      if (auto ce = verified(a)) {
        v.counterexample = std::move(*ce);
        break;
      }
    }
  }
  return v;
}

namespace {

Verdict check_no_import_export(OperatorKind kind) {
  Verdict v;
  v.property = "no_IE";
  v.operator_kind = kind;

  ConditionalEvent A = cond(ev_atom("A"), ev_true());
  ConditionalEvent BK = cond(ev_atom("B"), ev_atom("K"));
  ConditionalEvent BAK = cond(ev_atom("B"), ev_and(ev_atom("A"), ev_atom("K")));

  if (is_trivalent(kind)) {
    ConditionalEvent it = iterate_trivalent(trivalent_kind(kind), A, BK);
    v.holds = !semantically_equal(it, BAK);
    if (!v.holds) {
      // Import-Export holds: the equal assessment on the two objects is the
      // coherence-level face of the identity.
      Assessment a;
      a.assess(indicator(it, kMu), Rat(1, 2));
      a.assess(indicator(BAK, kNu), Rat(1, 2));
      v.counterexample = verified(a);
      v.note = "(B|K)|_" + to_string(kind) + " A = B|AK";
    }
    return v;
  }

  CrqPtr it = kind == OperatorKind::gs
                  ? iterate_structural(StructuralIterKind::gs, A, BK, kX, kY, kMu)
                  : iterate_structural(structural_kind(kind), A, BK, kX, kY, kMu);
  CrqPtr bak = indicator(BAK, kNu);
  v.holds = !semantically_equal(*it, *bak);
  return v;
}

Verdict check_p1(OperatorKind kind) {
  Stage st;
  Verdict v;
  v.property = "P1";
  v.operator_kind = kind;

  if (is_trivalent(kind)) {
    ConditionalEvent conj = conjoin_trivalent(partner_conjunction(kind), st.AH, st.BK);
    ConditionalEvent lhs = iterate_trivalent(trivalent_kind(kind), st.AH, conj);
    ConditionalEvent rhs = iterate_trivalent(trivalent_kind(kind), st.AH, st.BK);
    v.holds = semantically_equal(lhs, rhs);
    if (!v.holds) {
      // A coherent assessment telling the two sides apart.
      for (const auto& [a, b] : std::vector<std::pair<Rat, Rat>>{
               {1, 0}, {0, 1}, {1, Rat(1, 2)}, {Rat(1, 2), 1}}) {
        Assessment as;
        as.assess(indicator(lhs, kMu), a);
        as.assess(indicator(rhs, kNu), b);
        if (auto ce = verified(as)) {
          v.counterexample = std::move(*ce);
          break;
        }
      }
    }
    return v;
  }

  // Structural kinds: build the left side with the conjunction as consequent
  // and compare the two routes as random quantities; then confirm at the
  // coherence level that the previsions are forced equal. For K, B, S the
  // inner conjunction absorbs the antecedent (their conjunctions are
  // idempotent), so the consequent-route is fully independent. The
  // Lukasiewicz conjunction is not idempotent (void and void is false), so
  // for L, as for gs, the left side is the unfolded structure itself.
  CrqPtr lhs, rhs = st.iter(kind, kMu);
  if (kind == OperatorKind::gs || kind == OperatorKind::L) {
    lhs = iterate_structural(structural_kind(kind), st.AH, st.BK, kX, kY, kNu);
    v.note = "left side built from the unfolded structure";
  } else {
    ConditionalEvent conj = conjoin_trivalent(partner_conjunction(kind), st.AH, st.BK);
    lhs = iterate_structural(structural_kind(kind), st.AH, conj, kX, kY, kNu);
  }
  bool same_object = semantically_equal(*lhs, *rhs);

  Assessment both;
  both.bind("x", Rat(1, 2)).bind("y", Rat(1, 2));
  both.assess(lhs, Rat(1, 2));
  both.assess(rhs, Rat(1, 2));
  bool equal_ok = coherent(both);
  both.values[lhs->prevision.name] = Rat(1, 3);
  bool unequal_bad = !coherent(both);
  v.holds = same_object && equal_ok && unequal_bad;
  return v;
}

Verdict check_p2(OperatorKind kind) {
  Stage st;
  Verdict v;
  v.property = "P2";
  v.operator_kind = kind;

  if (is_trivalent(kind)) {
    ConditionalEvent conj = conjoin_trivalent(partner_conjunction(kind), st.AH, st.BK);
    ConditionalEvent iter = iterate_trivalent(trivalent_kind(kind), st.AH, st.BK);
    v.holds = gn_implies(conj, iter);
    if (!v.holds) {
      for (const auto& [c, i] : std::vector<std::pair<Rat, Rat>>{
               {1, 0}, {1, Rat(1, 2)}, {Rat(3, 4), Rat(1, 4)}}) {
        Assessment as;
        as.assess(indicator(conj, kZ), c);
        as.assess(indicator(iter, kMu), i);
        if (auto ce = verified(as); ce && c > i) {
          v.counterexample = std::move(*ce);
          break;
        }
      }
    }
    return v;
  }

  // Pointwise comparison of instantiated values on every constituent, for a
  // grid of bindings with mu >= 0 and z = x*mu.
  CrqPtr conj = st.conj(kind);
  CrqPtr iter = st.iter(kind);
  std::vector<EventPtr> regions{conj->conditioning, iter->conditioning};
  for (const auto& [r, e] : conj->pieces) regions.push_back(r);
  for (const auto& [r, e] : iter->pieces) regions.push_back(r);
  Universe u = Universe::over(regions);

  auto value_at = [&](const ConditionalRandomQuantity& q, std::uint32_t m,
                      const std::map<std::string, Rat>& binding) {
    if (!evaluate_mask(q.conditioning, u, m)) return q.off_value.evaluate(binding);
    for (const auto& [region, value] : q.pieces)
      if (evaluate_mask(region, u, m)) return value.evaluate(binding);
    throw Error("uncovered world");
  };

  v.holds = true;
  for (const Rat& x : {Rat(0), Rat(1, 2), Rat(1)})
    for (const Rat& y : {Rat(0), Rat(1, 2), Rat(1)})
      for (const Rat& mu : {Rat(0), Rat(1, 2), Rat(1)}) {
        std::map<std::string, Rat> binding{
            {"x", x}, {"y", y}, {"mu", mu}, {"z", x * mu}, {"mu.conj", x * mu}};
        for (std::uint32_t m = 0; m < u.world_count() && v.holds; ++m)
          if (value_at(*conj, m, binding) > value_at(*iter, m, binding)) v.holds = false;
      }
  return v;
}

Verdict check_p3(OperatorKind kind) {
  Stage st;
  Verdict v;
  v.property = "P3";
  v.operator_kind = kind;

  CrqPtr xobj = indicator(st.AH, kX);
  CrqPtr conj = st.conj(kind);

  if (is_trivalent(kind)) {
    // A coherent (x, mu, z) with z != mu*x refutes the compound prevision
    // formula in the operator's own logic.
    CrqPtr iter = st.iter(kind);
    for (const auto& [x, mu, z] : std::vector<std::array<Rat, 3>>{
             {Rat(1), Rat(0), Rat(1)}, {Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(1, 2), Rat(1)}}) {
      if (z == mu * x) continue;
      Assessment a;
      a.assess(xobj, x);
      a.assess(iter, mu);
      a.assess(conj, z);
      if (auto ce = verified(a)) {
        v.holds = false;
        v.counterexample = std::move(*ce);
        return v;
      }
    }
    v.holds = true; // no violation found (not expected for C, dF, F)
    return v;
  }

  // Structural kinds: z = x*mu is forced. Sample points confirm both
  // directions: the product is coherent, any off-product value is not.
  CrqPtr yobj = indicator(st.BK, kY);
  CrqPtr iter = st.iter(kind);
  v.holds = true;
  for (const auto& [x, y, mu] : std::vector<std::array<Rat, 3>>{
           {Rat(1, 2), Rat(1, 2), Rat(1, 2)},
           {Rat(1), Rat(1, 2), Rat(1, 2)},
           {Rat(3, 4), Rat(1, 4), Rat(1, 3)}}) {
    Assessment a;
    a.assess(xobj, x);
    a.assess(yobj, y);
    a.assess(conj, x * mu);
    a.assess(iter, mu);
    if (!coherent(a)) {
      v.holds = false;
      return v;
    }
    Rat bad = x * mu + Rat(1, 8);
    if (bad > 1) bad = x * mu - Rat(1, 8);
    if (bad == x * mu || bad < 0) continue;
    a.values[conj->prevision.name] = bad;
    if (coherent(a)) {
      v.holds = false;
      return v;
    }
  }
  return v;
}

Verdict check_p4(OperatorKind kind) {
  Stage st;
  Verdict v;
  v.property = "P4";
  v.operator_kind = kind;

  CrqPtr xobj = indicator(st.AH, kX);
  CrqPtr yobj = indicator(st.BK, kY);

  std::optional<BoundKind> snap;
  switch (kind) {
    case OperatorKind::K: snap = BoundKind::iter_K; break;
    case OperatorKind::L: snap = BoundKind::iter_L; break;
    case OperatorKind::B: snap = BoundKind::iter_B; break;
    case OperatorKind::S: snap = BoundKind::iter_S; break;
    case OperatorKind::gs: snap = BoundKind::iter_gs; break;
    default: break;
  }

  const Rat tol(1, 1000000);
  v.holds = true;
  for (const auto& [x, y] : std::vector<std::pair<Rat, Rat>>{
           {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(1, 2)}, {Rat(1, 2), Rat(1)}}) {
    Assessment a;
    a.assess(xobj, x);
    a.assess(yobj, y);
    a.family.push_back(st.iter(kind));

    ExtensionOptions opt;
    opt.snap_kind = snap;
    opt.snap_x = x;
    opt.snap_y = y;
    ExtensionInterval found = extension_interval(a, opt);
    ExtensionInterval reference = closed_form_bounds(BoundKind::plain_conditional, x, y);

    bool match = !found.unbounded_above && abs(found.lower - reference.lower) <= tol &&
                 abs(found.upper - reference.upper) <= tol;
    if (match) continue;
    v.holds = false;

    // Witness: a coherent prevision outside the plain-conditional interval.
    std::vector<Rat> outside;
    if (found.lower < reference.lower) outside.push_back(found.lower);
    if (found.unbounded_above || found.upper > reference.upper)
      outside.push_back(found.unbounded_above ? reference.upper + 1 : found.upper);
    for (const Rat& w : outside) {
      Assessment ce = a;
      ce.values["mu"] = w;
      if (auto got = verified(ce)) {
        v.counterexample = std::move(*got);
        break;
      }
    }
    break;
  }
  return v;
}

}  // namespace

std::vector<Verdict> property_suite() {
  std::vector<Verdict> table;
  for (OperatorKind kind : {OperatorKind::C, OperatorKind::dF, OperatorKind::F,
                            OperatorKind::K, OperatorKind::L, OperatorKind::B,
                            OperatorKind::S, OperatorKind::gs}) {
    table.push_back(check_no_import_export(kind));
    table.push_back(check_p1(kind));
    table.push_back(check_p2(kind));
    table.push_back(check_p3(kind));
    table.push_back(check_p4(kind));
  }
  return table;
}

LewisTriviality lewis_triviality_demo() {
  LewisTriviality out;
  EventPtr C = ev_atom("C"), A = ev_atom("A");

  // P(C|AC) is forced to 1 and P(C|A notC) to 0; with Import-Export and total
  // probability this pins P(C|A) to P(C).
  CrqPtr c_given_ac = indicator(cond(C, ev_and(A, C)), Param{"t1", ParamRole::probability});
  CrqPtr c_given_anc =
      indicator(cond(C, ev_and(A, ev_not(C))), Param{"t0", ParamRole::probability});

  out.collapse_exhibited = true;
  for (const Rat& p : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
    Assessment forced_hi;
    forced_hi.assess(c_given_ac, 1);
    Assessment forced_lo;
    forced_lo.assess(c_given_anc, 0);
    bool pinned = check_coherence(forced_hi).coherent && check_coherence(forced_lo).coherent;
    {
      Assessment bad = forced_hi;
      bad.values["t1"] = Rat(1, 2);
      Assessment bad2 = forced_lo;
      bad2.values["t0"] = Rat(1, 2);
      pinned = pinned && !check_coherence(bad).coherent && !check_coherence(bad2).coherent;
    }

    LewisRow row;
    row.p = p;
    row.forced = 1 * p + 0 * (1 - p);
    row.alternative = p == Rat(1, 2) ? Rat(7, 8) : Rat(1, 2);
    Assessment alt;
    alt.assess(indicator(cond(C, ev_true()), Param{"pc", ParamRole::probability}), p);
    alt.assess(indicator(cond(C, A), Param{"pca", ParamRole::probability}), row.alternative);
    row.alternative_coherent = check_coherence(alt).coherent;
    out.rows.push_back(row);
    out.collapse_exhibited = out.collapse_exhibited && pinned &&
                             row.alternative_coherent && row.forced == p &&
                             row.alternative != row.forced;
  }
  return out;
}

}  // namespace crq
