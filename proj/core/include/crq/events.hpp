#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crq/errors.hpp"

namespace crq {

// ---------------------------------------------------------------------------
// Boolean event formulas over named atomic events.
//
// Formulas are immutable shared trees. Everything downstream (possibility,
// constituents, coherence) is decided by exhaustive world enumeration, which
// is exact and entirely adequate for the family sizes this library targets
// (a handful of atoms, never more than kMaxAtoms).
// ---------------------------------------------------------------------------

struct Event;
using EventPtr = std::shared_ptr<const Event>;

enum class EventKind { True, False, Atom, Not, And, Or };

struct Event {
  EventKind kind;
  std::string atom;               // valid when kind == Atom
  std::vector<EventPtr> children; // Not: 1 child; And/Or: >= 2 children
};

EventPtr ev_true();
EventPtr ev_false();
EventPtr ev_atom(const std::string& name);
EventPtr ev_not(EventPtr a);
EventPtr ev_and(EventPtr a, EventPtr b);
EventPtr ev_or(EventPtr a, EventPtr b);
EventPtr ev_and(const std::vector<EventPtr>& xs); // empty -> TRUE
EventPtr ev_or(const std::vector<EventPtr>& xs);  // empty -> FALSE

/// Collects atom names into `out`, preserving first-appearance order.
void collect_atoms(const EventPtr& e, std::vector<std::string>& out);

std::string to_string(const EventPtr& e);

/// Total truth assignment for a set of atomic events.
struct World {
  std::map<std::string, bool> assignment;
};

/// Standard Boolean semantics; throws UnknownAtom if a leaf is missing.
bool evaluate(const EventPtr& formula, const World& world);

// ---------------------------------------------------------------------------
// Atom universe and bitmask worlds (internal fast path, also used by the
// coherence engine). Atom i of the universe corresponds to bit i.
// ---------------------------------------------------------------------------

inline constexpr int kMaxAtoms = 16;

struct Universe {
  std::vector<std::string> atoms; // sorted, unique

  static Universe over(const std::vector<EventPtr>& formulas);
  int index_of(const std::string& name) const; // -1 if absent
  std::size_t world_count() const { return std::size_t(1) << atoms.size(); }
  World world(std::uint32_t mask) const;
};

bool evaluate_mask(const EventPtr& formula, const Universe& u, std::uint32_t mask);

/// True iff some world satisfies `formula` together with all `constraints`.
/// Constraints are formulas that must hold in every admissible world.
bool is_possible(const EventPtr& formula, const std::vector<EventPtr>& constraints);

/// One possible elementary outcome generated by a family of conditional
/// objects: a maximal set of worlds indistinguishable by the family.
struct Constituent {
  EventPtr formula;                 // canonical sum-of-worlds form
  int index = 0;                    // 0 is reserved for the all-antecedents-false constituent
  Universe universe;
  std::vector<std::uint32_t> masks; // nonempty, sorted ascending

  std::vector<World> worlds() const;
  bool implied_by_mask(std::uint32_t m) const;
};

/// One conditional object as seen by the constituent builder: the pieces
/// partitioning its conditioning event, plus the conditioning event itself.
struct PartitionedObject {
  std::vector<EventPtr> pieces; // partition of `antecedent`
  EventPtr antecedent;
};

/// All non-impossible intersections generated by the family, per the
/// distributive expansion of Omega. The constituents implying
/// H_1 v ... v H_n come first with indices 1..m; the all-antecedents-false
/// constituent, when possible, is returned last with index 0.
std::vector<Constituent> constituents(const std::vector<PartitionedObject>& family,
                                      const std::vector<EventPtr>& constraints = {});

}  // namespace crq
