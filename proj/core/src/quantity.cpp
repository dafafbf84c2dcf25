#include "crq/quantity.hpp"

#include <algorithm>
#include <set>

#include "crq/errors.hpp"

namespace crq {

// ---------------------------------------------------------------------------
// AffineExpr
// ---------------------------------------------------------------------------

void AffineExpr::add_linear(const std::string& p, const Rat& c) {
  if (c == 0) return;
  auto it = linear_.find(p);
  if (it == linear_.end()) {
    linear_.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) linear_.erase(it);
  }
}

void AffineExpr::add_bilinear(const std::string& p, const std::string& q, const Rat& c) {
  if (c == 0) return;
  auto key = p <= q ? std::make_pair(p, q) : std::make_pair(q, p);
  auto it = bilinear_.find(key);
  if (it == bilinear_.end()) {
    bilinear_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) bilinear_.erase(it);
  }
}

AffineExpr AffineExpr::param(const std::string& name) {
  AffineExpr e;
  e.add_linear(name, 1);
  return e;
}

AffineExpr AffineExpr::operator+(const AffineExpr& o) const {
  AffineExpr r = *this;
  r.constant_ += o.constant_;
  for (const auto& [p, c] : o.linear_) r.add_linear(p, c);
  for (const auto& [pq, c] : o.bilinear_) r.add_bilinear(pq.first, pq.second, c);
  return r;
}

AffineExpr AffineExpr::operator-(const AffineExpr& o) const {
  return *this + o * Rat(-1);
}

AffineExpr AffineExpr::operator*(const Rat& k) const {
  AffineExpr r;
  if (k == 0) return r;
  r.constant_ = constant_ * k;
  for (const auto& [p, c] : linear_) r.linear_.emplace(p, c * k);
  for (const auto& [pq, c] : bilinear_) r.bilinear_.emplace(pq, c * k);
  return r;
}

AffineExpr AffineExpr::mul(const AffineExpr& a, const AffineExpr& b) {
  if (!a.bilinear_.empty() && !(b.is_constant()))
    throw Error("product exceeds degree 2 in parameters");
  if (!b.bilinear_.empty() && !(a.is_constant()))
    throw Error("product exceeds degree 2 in parameters");
  if (!a.linear_.empty() && !b.linear_.empty() &&
      (!a.bilinear_.empty() || !b.bilinear_.empty()))
    throw Error("product exceeds degree 2 in parameters");

  AffineExpr r;
  r.constant_ = a.constant_ * b.constant_;
  for (const auto& [p, c] : a.linear_) r.add_linear(p, c * b.constant_);
  for (const auto& [p, c] : b.linear_) r.add_linear(p, c * a.constant_);
  for (const auto& [pq, c] : a.bilinear_) r.add_bilinear(pq.first, pq.second, c * b.constant_);
  for (const auto& [pq, c] : b.bilinear_) r.add_bilinear(pq.first, pq.second, c * a.constant_);
  for (const auto& [p, cp] : a.linear_)
    for (const auto& [q, cq] : b.linear_) r.add_bilinear(p, q, cp * cq);
  return r;
}

AffineExpr AffineExpr::substitute(const std::string& name, const AffineExpr& repl) const {
  AffineExpr r;
  r.constant_ = constant_;
  for (const auto& [p, c] : linear_) {
    if (p == name) {
      r = r + repl * c;
    } else {
      r.add_linear(p, c);
    }
  }
  for (const auto& [pq, c] : bilinear_) {
    bool fst = pq.first == name, snd = pq.second == name;
    if (!fst && !snd) {
      r.add_bilinear(pq.first, pq.second, c);
    } else if (fst && snd) {
      r = r + mul(repl, repl) * c;
    } else {
      const std::string& other = fst ? pq.second : pq.first;
      r = r + mul(repl, AffineExpr::param(other)) * c;
    }
  }
  return r;
}

Rat AffineExpr::evaluate(const std::map<std::string, Rat>& binding) const {
  auto look = [&](const std::string& p) -> const Rat& {
    auto it = binding.find(p);
    if (it == binding.end()) throw UnboundParam(p);
    return it->second;
  };
  Rat v = constant_;
  for (const auto& [p, c] : linear_) v += c * look(p);
  for (const auto& [pq, c] : bilinear_) v += c * look(pq.first) * look(pq.second);
  return v;
}

AffineExpr AffineExpr::bind_except(const std::map<std::string, Rat>& binding,
                                   const std::string& keep) const {
  AffineExpr r;
  r.constant_ = constant_;
  auto bound = [&](const std::string& p) -> const Rat* {
    if (p == keep) return nullptr;
    auto it = binding.find(p);
    return it == binding.end() ? nullptr : &it->second;
  };
  for (const auto& [p, c] : linear_) {
    if (const Rat* v = bound(p))
      r.constant_ += c * *v;
    else
      r.add_linear(p, c);
  }
  for (const auto& [pq, c] : bilinear_) {
    const Rat* v1 = bound(pq.first);
    const Rat* v2 = bound(pq.second);
    if (v1 && v2)
      r.constant_ += c * *v1 * *v2;
    else if (v1)
      r.add_linear(pq.second, c * *v1);
    else if (v2)
      r.add_linear(pq.first, c * *v2);
    else
      r.add_bilinear(pq.first, pq.second, c);
  }
  return r;
}

bool AffineExpr::is_param(const std::string& name) const {
  return constant_ == 0 && bilinear_.empty() && linear_.size() == 1 &&
         linear_.begin()->first == name && linear_.begin()->second == 1;
}

bool AffineExpr::operator==(const AffineExpr& o) const {
  return constant_ == o.constant_ && linear_ == o.linear_ && bilinear_ == o.bilinear_;
}

std::vector<std::string> AffineExpr::params() const {
  std::set<std::string> s;
  for (const auto& [p, c] : linear_) s.insert(p);
  for (const auto& [pq, c] : bilinear_) {
    s.insert(pq.first);
    s.insert(pq.second);
  }
  return {s.begin(), s.end()};
}

std::string AffineExpr::to_string() const {
  std::string out;
  auto term = [&](const Rat& c, const std::string& body) {
    if (c == 0) return;
    std::string cs = crq::to_string(abs(c));
    bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (body.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += body;
    } else {
      out += cs + "*" + body;
    }
  };
  term(constant_, "");
  for (const auto& [p, c] : linear_) term(c, p);
  for (const auto& [pq, c] : bilinear_)
    term(c, pq.first == pq.second ? pq.first + "^2" : pq.first + "*" + pq.second);
  if (out.empty()) out = "0";
  return out;
}

// ---------------------------------------------------------------------------
// ConditionalRandomQuantity constructors
// ---------------------------------------------------------------------------

PartitionedObject ConditionalRandomQuantity::partitioned() const {
  PartitionedObject po;
  po.antecedent = conditioning;
  for (const auto& [region, value] : pieces) po.pieces.push_back(region);
  return po;
}

std::vector<std::string> ConditionalRandomQuantity::all_params() const {
  std::set<std::string> s;
  for (const auto& [region, value] : pieces)
    for (auto& p : value.params()) s.insert(p);
  for (auto& p : off_value.params()) s.insert(p);
  s.insert(prevision.name);
  return {s.begin(), s.end()};
}

Assessment& Assessment::assess(CrqPtr obj, const Rat& prevision_value) {
  values[obj->prevision.name] = prevision_value;
  family.push_back(std::move(obj));
  return *this;
}

Assessment& Assessment::bind(const std::string& param, const Rat& value) {
  values[param] = value;
  return *this;
}

CrqPtr indicator(const ConditionalEvent& ce, const Param& x,
                 const std::vector<EventPtr>& constraints) {
  if (!is_possible(ce.antecedent, constraints))
    throw ImpossibleAntecedent("conditioning event " + to_string(ce.antecedent) +
                               " is impossible");
  EventPtr ah = ev_and(ce.consequent, ce.antecedent);
  EventPtr nah = ev_and(ev_not(ce.consequent), ce.antecedent);
  auto q = std::make_shared<ConditionalRandomQuantity>();
  q->label = ce.antecedent->kind == EventKind::True
                 ? to_string(ce.consequent)
                 : to_string(ce.consequent) + "|" + to_string(ce.antecedent);
  q->conditioning = ce.antecedent;
  q->prevision = x;
  if (!is_possible(ah, constraints)) {
    q->pieces = {{ce.antecedent, AffineExpr::constant(0)}};
    q->off_value = AffineExpr::constant(0);
  } else if (!is_possible(nah, constraints)) {
    q->pieces = {{ce.antecedent, AffineExpr::constant(1)}};
    q->off_value = AffineExpr::constant(1);
  } else {
    q->pieces = {{ah, AffineExpr::constant(1)}, {nah, AffineExpr::constant(0)}};
    q->off_value = AffineExpr::param(x.name);
  }
  return q;
}

CrqPtr discrete_quantity(const std::string& label, EventPtr conditioning,
                         std::vector<std::pair<EventPtr, AffineExpr>> pieces,
                         const Param& prevision,
                         const std::vector<EventPtr>& constraints) {
  if (!is_possible(conditioning, constraints))
    throw ImpossibleAntecedent("conditioning event " + to_string(conditioning) +
                               " is impossible");
  auto q = std::make_shared<ConditionalRandomQuantity>();
  q->label = label;
  q->conditioning = std::move(conditioning);
  q->pieces = std::move(pieces);
  q->off_value = AffineExpr::param(prevision.name);
  q->prevision = prevision;
  return q;
}

namespace {

// Piecewise value description used while composing quantities: a list of
// (region, expr) covering Omega.
using PieceMap = std::vector<std::pair<EventPtr, AffineExpr>>;

PieceMap event_pieces(const ConditionalEvent& ce, const AffineExpr& off) {
  EventPtr yes = ev_and(ce.consequent, ce.antecedent);
  EventPtr no = ev_and(ev_not(ce.consequent), ce.antecedent);
  return {{yes, AffineExpr::constant(1)},
          {no, AffineExpr::constant(0)},
          {ev_not(ce.antecedent), off}};
}

// Pointwise sum over the common refinement, dropping impossible cells.
PieceMap add_pieces(const PieceMap& a, const PieceMap& b,
                    const std::vector<EventPtr>& constraints) {
  PieceMap out;
  for (const auto& [ra, va] : a)
    for (const auto& [rb, vb] : b) {
      EventPtr r = ev_and(ra, rb);
      if (!is_possible(r, constraints)) continue;
      out.emplace_back(r, va + vb);
    }
  return out;
}

// Builds the quantity from Omega-covering pieces: regions whose value is
// formally the prevision parameter become the off-part, the rest the
// conditioning event.
CrqPtr from_pieces(std::string label, const PieceMap& pm, const Param& prevision,
                   const std::vector<EventPtr>& constraints) {
  std::vector<EventPtr> on_regions;
  PieceMap on;
  for (const auto& [r, v] : pm) {
    if (v.is_param(prevision.name)) continue;
    on_regions.push_back(r);
    on.emplace_back(r, v);
  }
  if (on_regions.empty())
    throw ImpossibleAntecedent("quantity " + label + " is called off everywhere");
  auto q = std::make_shared<ConditionalRandomQuantity>();
  q->label = std::move(label);
  q->conditioning = ev_or(on_regions);
  if (!is_possible(q->conditioning, constraints))
    throw ImpossibleAntecedent("conditioning event of " + q->label + " is impossible");
  q->pieces = std::move(on);
  q->off_value = AffineExpr::param(prevision.name);
  q->prevision = prevision;
  return q;
}

PieceMap gs_conj_pieces(const ConditionalEvent& a, const ConditionalEvent& b,
                        const Param& x, const Param& y, const Param& z) {
  const EventPtr &A = a.consequent, &H = a.antecedent;
  const EventPtr &B = b.consequent, &K = b.antecedent;
  EventPtr AH = ev_and(A, H), BK = ev_and(B, K);
  EventPtr AHBK = ev_and(AH, BK);
  EventPtr AHnK = ev_and(AH, ev_not(K));
  EventPtr nHBK = ev_and(ev_not(H), BK);
  EventPtr HvK = ev_or(H, K);
  EventPtr zero = ev_and(HvK, ev_not(ev_or({AHBK, AHnK, nHBK})));
  return {{AHBK, AffineExpr::constant(1)},
          {AHnK, AffineExpr::param(y.name)},
          {nHBK, AffineExpr::param(x.name)},
          {zero, AffineExpr::constant(0)},
          {ev_not(HvK), AffineExpr::param(z.name)}};
}

}  // namespace

CrqPtr conjoin_gs(const ConditionalEvent& a, const ConditionalEvent& b, const Param& x,
                  const Param& y, const Param& z,
                  const std::vector<EventPtr>& constraints) {
  if (!is_possible(ev_or(a.antecedent, b.antecedent), constraints))
    throw ImpossibleAntecedent("H or K is impossible");
  PieceMap pm = gs_conj_pieces(a, b, x, y, z);
  std::string label = "(" + to_string(a.consequent) + "|" + to_string(a.antecedent) +
                      ") and_gs (" + to_string(b.consequent) + "|" +
                      to_string(b.antecedent) + ")";
  return from_pieces(std::move(label), pm, z, constraints);
}

CrqPtr disjoin_gs(const ConditionalEvent& a, const ConditionalEvent& b, const Param& x,
                  const Param& y, const Param& w,
                  const std::vector<EventPtr>& constraints) {
  if (!is_possible(ev_or(a.antecedent, b.antecedent), constraints))
    throw ImpossibleAntecedent("H or K is impossible");
  const EventPtr &A = a.consequent, &H = a.antecedent;
  const EventPtr &B = b.consequent, &K = b.antecedent;
  EventPtr AH = ev_and(A, H), BK = ev_and(B, K);
  EventPtr one = ev_or(AH, BK);
  EventPtr nHnBK = ev_and(ev_not(H), ev_and(ev_not(B), K));
  EventPtr nAHnK = ev_and(ev_and(ev_not(A), H), ev_not(K));
  EventPtr HvK = ev_or(H, K);
  EventPtr zero = ev_and(HvK, ev_not(ev_or({one, nHnBK, nAHnK})));
  PieceMap pm = {{one, AffineExpr::constant(1)},
                 {nHnBK, AffineExpr::param(x.name)},
                 {nAHnK, AffineExpr::param(y.name)},
                 {zero, AffineExpr::constant(0)},
                 {ev_not(HvK), AffineExpr::param(w.name)}};
  std::string label = "(" + to_string(a.consequent) + "|" + to_string(a.antecedent) +
                      ") or_gs (" + to_string(b.consequent) + "|" +
                      to_string(b.antecedent) + ")";
  return from_pieces(std::move(label), pm, w, constraints);
}

std::string to_string(StructuralIterKind k) {
  switch (k) {
    case StructuralIterKind::K:
      return "K";
    case StructuralIterKind::L:
      return "L";
    case StructuralIterKind::B:
      return "B";
    case StructuralIterKind::S:
      return "S";
    case StructuralIterKind::gs:
      return "gs";
  }
  return "?";
}

CrqPtr iterate_structural(StructuralIterKind kind, const ConditionalEvent& antecedent,
                          const ConditionalEvent& consequent, const Param& x,
                          const Param& y, const Param& mu,
                          const std::vector<EventPtr>& constraints) {
  EventPtr ah = ev_and(antecedent.consequent, antecedent.antecedent);
  if (!is_possible(ah, constraints))
    throw ImpossibleAntecedent("iterated conditional needs a possible " + to_string(ah));

  std::string zname = mu.name + ".conj";
  Param zparam{zname, ParamRole::prevision};

  // Underlying conjunction, as a value map over Omega and as the companion.
  PieceMap conj_pm;
  CrqPtr companion;
  std::string ops;
  if (kind == StructuralIterKind::gs) {
    conj_pm = gs_conj_pieces(antecedent, consequent, x, y, zparam);
    companion = conjoin_gs(antecedent, consequent, x, y, zparam, constraints);
    ops = "gs";
  } else {
    ConjunctionKind ck;
    switch (kind) {
      case StructuralIterKind::K:
        ck = ConjunctionKind::K;
        break;
      case StructuralIterKind::L:
        ck = ConjunctionKind::L;
        break;
      case StructuralIterKind::B:
        ck = ConjunctionKind::B;
        break;
      default:
        ck = ConjunctionKind::S;
        break;
    }
    ConditionalEvent conj = conjoin_trivalent(ck, antecedent, consequent, constraints);
    conj_pm = event_pieces(conj, AffineExpr::param(zname));
    companion = indicator(conj, zparam, constraints);
    ops = to_string(ck);
  }

  // mu * (not antecedent): 1 on (not A)H, 0 on AH, (1-x) off H.
  PieceMap neg_pm = {
      {ev_and(ev_not(antecedent.consequent), antecedent.antecedent),
       AffineExpr::param(mu.name)},
      {ah, AffineExpr::constant(0)},
      {ev_not(antecedent.antecedent),
       AffineExpr::mul(AffineExpr::param(mu.name),
                       AffineExpr::constant(1) - AffineExpr::param(x.name))}};

  PieceMap sum = add_pieces(conj_pm, neg_pm, constraints);
  AffineExpr zx = AffineExpr::mul(AffineExpr::param(x.name), AffineExpr::param(mu.name));
  for (auto& [region, value] : sum) value = value.substitute(zname, zx);

  std::string label = "(" + to_string(consequent.consequent) + "|" +
                      to_string(consequent.antecedent) + ") iter_" + to_string(kind) +
                      " (" + to_string(antecedent.consequent) + "|" +
                      to_string(antecedent.antecedent) + ")";
  auto q = from_pieces(std::move(label), sum, mu, constraints);
  auto qq = std::const_pointer_cast<ConditionalRandomQuantity>(q);
  qq->companions.push_back(Companion{companion, {x.name, mu.name}});
  return q;
}

std::vector<std::pair<Constituent, Rat>> value_table(
    const ConditionalRandomQuantity& crq, const std::map<std::string, Rat>& binding,
    const std::vector<EventPtr>& constraints) {
  auto sym = symbolic_table(crq, constraints);
  std::vector<std::pair<Constituent, Rat>> out;
  out.reserve(sym.size());
  for (auto& [c, e] : sym) out.emplace_back(std::move(c), e.evaluate(binding));
  return out;
}

std::vector<std::pair<Constituent, AffineExpr>> symbolic_table(
    const ConditionalRandomQuantity& crq, const std::vector<EventPtr>& constraints) {
  auto cs = constituents({crq.partitioned()}, constraints);
  std::vector<std::pair<Constituent, AffineExpr>> out;
  for (auto& c : cs) {
    if (c.index == 0) {
      out.emplace_back(std::move(c), crq.off_value);
      continue;
    }
    // Every world of a constituent lies in exactly one piece.
    std::uint32_t m = c.masks.front();
    bool found = false;
    for (const auto& [region, value] : crq.pieces) {
      if (evaluate_mask(region, c.universe, m)) {
        out.emplace_back(std::move(c), value);
        found = true;
        break;
      }
    }
    if (!found) throw Error("constituent not covered by any piece of " + crq.label);
  }
  return out;
}

bool semantically_equal(const ConditionalRandomQuantity& a,
                        const ConditionalRandomQuantity& b,
                        const std::vector<EventPtr>& constraints) {
  const std::string common = "#prev";
  std::vector<EventPtr> all{a.conditioning, b.conditioning};
  for (const auto& [r, v] : a.pieces) all.push_back(r);
  for (const auto& [r, v] : b.pieces) all.push_back(r);
  for (const auto& c : constraints) all.push_back(c);
  Universe u = Universe::over(all);

  auto value_at = [&](const ConditionalRandomQuantity& q, std::uint32_t m) -> AffineExpr {
    AffineExpr v;
    if (!evaluate_mask(q.conditioning, u, m)) {
      v = q.off_value;
    } else {
      bool found = false;
      for (const auto& [region, value] : q.pieces)
        if (evaluate_mask(region, u, m)) {
          v = value;
          found = true;
          break;
        }
      if (!found) throw Error("world not covered by any piece of " + q.label);
    }
    return v.substitute(q.prevision.name, AffineExpr::param(common));
  };

  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    bool admissible = true;
    for (const auto& c : constraints)
      if (!evaluate_mask(c, u, m)) {
        admissible = false;
        break;
      }
    if (!admissible) continue;
    if (!(value_at(a, m) == value_at(b, m))) return false;
  }
  return true;
}

}  // namespace crq
