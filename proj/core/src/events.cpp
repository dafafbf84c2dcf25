#include "crq/events.hpp"

#include <algorithm>
#include <set>

namespace crq {

namespace {

EventPtr make(EventKind k, std::string atom = {}, std::vector<EventPtr> ch = {}) {
  auto e = std::make_shared<Event>();
  e->kind = k;
  e->atom = std::move(atom);
  e->children = std::move(ch);
  return e;
}

const EventPtr kTrue = make(EventKind::True);
const EventPtr kFalse = make(EventKind::False);

}  // namespace

EventPtr ev_true() { return kTrue; }
EventPtr ev_false() { return kFalse; }

EventPtr ev_atom(const std::string& name) {
  if (name.empty()) throw Error("atomic event name is empty");
  return make(EventKind::Atom, name);
}

EventPtr ev_not(EventPtr a) {
  if (a->kind == EventKind::True) return kFalse;
  if (a->kind == EventKind::False) return kTrue;
  return make(EventKind::Not, {}, {std::move(a)});
}

EventPtr ev_and(EventPtr a, EventPtr b) {
  if (a->kind == EventKind::True) return b;
  if (b->kind == EventKind::True) return a;
  if (a->kind == EventKind::False || b->kind == EventKind::False) return kFalse;
  return make(EventKind::And, {}, {std::move(a), std::move(b)});
}

EventPtr ev_or(EventPtr a, EventPtr b) {
  if (a->kind == EventKind::False) return b;
  if (b->kind == EventKind::False) return a;
  if (a->kind == EventKind::True || b->kind == EventKind::True) return kTrue;
  return make(EventKind::Or, {}, {std::move(a), std::move(b)});
}

EventPtr ev_and(const std::vector<EventPtr>& xs) {
  if (xs.empty()) return ev_true();
  if (xs.size() == 1) return xs[0];
  return make(EventKind::And, {}, xs);
}

EventPtr ev_or(const std::vector<EventPtr>& xs) {
  if (xs.empty()) return ev_false();
  if (xs.size() == 1) return xs[0];
  return make(EventKind::Or, {}, xs);
}

void collect_atoms(const EventPtr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case EventKind::Atom:
      if (std::find(out.begin(), out.end(), e->atom) == out.end()) out.push_back(e->atom);
      break;
    case EventKind::Not:
    case EventKind::And:
    case EventKind::Or:
      for (const auto& c : e->children) collect_atoms(c, out);
      break;
    default:
      break;
  }
}

std::string to_string(const EventPtr& e) {
  switch (e->kind) {
    case EventKind::True:
      return "TRUE";
    case EventKind::False:
      return "FALSE";
    case EventKind::Atom:
      return e->atom;
    case EventKind::Not: {
      const auto& c = e->children[0];
      if (c->kind == EventKind::Atom || c->kind == EventKind::True ||
          c->kind == EventKind::False || c->kind == EventKind::Not)
        return "!" + to_string(c);
      return "!(" + to_string(c) + ")";
    }
    case EventKind::And: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        const auto& c = e->children[i];
        bool wrap = c->kind == EventKind::Or;
        if (i) s += " & ";
        s += wrap ? "(" + to_string(c) + ")" : to_string(c);
      }
      return s;
    }
    case EventKind::Or: {
      std::string s;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) s += " or ";
        s += to_string(e->children[i]);
      }
      return s;
    }
  }
  return "?";
}

bool evaluate(const EventPtr& formula, const World& world) {
  switch (formula->kind) {
    case EventKind::True:
      return true;
    case EventKind::False:
      return false;
    case EventKind::Atom: {
      auto it = world.assignment.find(formula->atom);
      if (it == world.assignment.end()) throw UnknownAtom(formula->atom);
      return it->second;
    }
    case EventKind::Not:
      return !evaluate(formula->children[0], world);
    case EventKind::And:
      for (const auto& c : formula->children)
        if (!evaluate(c, world)) return false;
      return true;
    case EventKind::Or:
      for (const auto& c : formula->children)
        if (evaluate(c, world)) return true;
      return false;
  }
  return false;
}

Universe Universe::over(const std::vector<EventPtr>& formulas) {
  std::vector<std::string> names;
  for (const auto& f : formulas) collect_atoms(f, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (int(names.size()) > kMaxAtoms)
    throw Error("too many atomic events (" + std::to_string(names.size()) +
                "); the exhaustive-enumeration core supports at most " +
                std::to_string(kMaxAtoms));
  Universe u;
  u.atoms = std::move(names);
  return u;
}

int Universe::index_of(const std::string& name) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
  if (it == atoms.end() || *it != name) return -1;
  return int(it - atoms.begin());
}

World Universe::world(std::uint32_t mask) const {
  World w;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    w.assignment[atoms[i]] = (mask >> i) & 1u;
  return w;
}

bool evaluate_mask(const EventPtr& formula, const Universe& u, std::uint32_t mask) {
  switch (formula->kind) {
    case EventKind::True:
      return true;
    case EventKind::False:
      return false;
    case EventKind::Atom: {
      int i = u.index_of(formula->atom);
      if (i < 0) throw UnknownAtom(formula->atom);
      return (mask >> i) & 1u;
    }
    case EventKind::Not:
      return !evaluate_mask(formula->children[0], u, mask);
    case EventKind::And:
      for (const auto& c : formula->children)
        if (!evaluate_mask(c, u, mask)) return false;
      return true;
    case EventKind::Or:
      for (const auto& c : formula->children)
        if (evaluate_mask(c, u, mask)) return true;
      return false;
  }
  return false;
}

bool is_possible(const EventPtr& formula, const std::vector<EventPtr>& constraints) {
  std::vector<EventPtr> all = constraints;
  all.push_back(formula);
  Universe u = Universe::over(all);
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    if (!evaluate_mask(formula, u, m)) continue;
    bool ok = true;
    for (const auto& c : constraints)
      if (!evaluate_mask(c, u, m)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

namespace {

EventPtr world_formula(const Universe& u, std::uint32_t mask) {
  std::vector<EventPtr> lits;
  lits.reserve(u.atoms.size());
  for (std::size_t i = 0; i < u.atoms.size(); ++i) {
    EventPtr a = ev_atom(u.atoms[i]);
    lits.push_back(((mask >> i) & 1u) ? a : ev_not(a));
  }
  return ev_and(lits);
}

EventPtr sum_of_worlds(const Universe& u, const std::vector<std::uint32_t>& masks) {
  std::vector<EventPtr> terms;
  terms.reserve(masks.size());
  for (auto m : masks) terms.push_back(world_formula(u, m));
  return ev_or(terms);
}

}  // namespace

std::vector<World> Constituent::worlds() const {
  std::vector<World> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(universe.world(m));
  return out;
}

bool Constituent::implied_by_mask(std::uint32_t m) const {
  return std::binary_search(masks.begin(), masks.end(), m);
}

std::vector<Constituent> constituents(const std::vector<PartitionedObject>& family,
                                      const std::vector<EventPtr>& constraints) {
  if (family.empty()) throw EmptyFamily();

  std::vector<EventPtr> all;
  for (const auto& obj : family) {
    all.push_back(obj.antecedent);
    for (const auto& p : obj.pieces) all.push_back(p);
  }
  for (const auto& c : constraints) all.push_back(c);
  Universe u = Universe::over(all);

  // Signature of a world: for each object, the piece it falls in
  // (r_i marks the negated antecedent).
  std::map<std::vector<int>, std::vector<std::uint32_t>> groups;
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    bool admissible = true;
    for (const auto& c : constraints)
      if (!evaluate_mask(c, u, m)) {
        admissible = false;
        break;
      }
    if (!admissible) continue;

    std::vector<int> sig;
    sig.reserve(family.size());
    for (const auto& obj : family) {
      if (!evaluate_mask(obj.antecedent, u, m)) {
        sig.push_back(int(obj.pieces.size()));
        continue;
      }
      int found = -1;
      for (std::size_t j = 0; j < obj.pieces.size(); ++j) {
        if (evaluate_mask(obj.pieces[j], u, m)) {
          if (found >= 0) throw Error("partition pieces overlap on the antecedent");
          found = int(j);
        }
      }
      if (found < 0) throw Error("partition pieces do not cover the antecedent");
      sig.push_back(found);
    }
    groups[sig].push_back(m);
  }

  std::vector<int> all_off;
  for (const auto& obj : family) all_off.push_back(int(obj.pieces.size()));

  // Deterministic order: ascending smallest world mask.
  std::vector<std::pair<std::uint32_t, const std::vector<std::uint32_t>*>> order;
  const std::vector<std::uint32_t>* c0 = nullptr;
  for (const auto& [sig, masks] : groups) {
    if (sig == all_off) {
      c0 = &masks;
      continue;
    }
    order.emplace_back(masks.front(), &masks);
  }
  std::sort(order.begin(), order.end());

  std::vector<Constituent> out;
  int idx = 1;
  for (const auto& [first, masks] : order) {
    (void)first;
    Constituent c;
    c.universe = u;
    c.masks = *masks;
    c.formula = sum_of_worlds(u, c.masks);
    c.index = idx++;
    out.push_back(std::move(c));
  }
  if (c0) {
    Constituent c;
    c.universe = u;
    c.masks = *c0;
    c.formula = sum_of_worlds(u, c.masks);
    c.index = 0;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace crq
