#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crq/quantity.hpp"
#include "crq/simplex.hpp"

namespace crq {

/// The geometric data of an assessment: one point Q_h per constituent
/// implying H_1 v ... v H_n, the target vector M of assessed previsions, and
/// for each object the set of constituents implying its conditioning event.
struct PointSystem {
  std::vector<Constituent> constituents;        // C_1..C_m, then C_0 (index 0) if possible
  std::vector<std::vector<Rat>> points;         // Q_h for C_1..C_m
  std::vector<Rat> target;                      // M
  std::vector<std::vector<int>> antecedent_masks; // per object: positions into `points`
  std::vector<std::string> labels;

  std::size_t in_system() const { return points.size(); }
};

/// Appends each object's companions to the family and binds their previsions
/// to the derived values (product of the named parameters). Idempotent for
/// families without companions.
Assessment augment(const Assessment& assessment);

/// Builds the point system for a fully bound assessment. Values are the
/// instantiated per-constituent expressions; an object's conditioning event
/// is taken "effectively": a constituent counts as conditioning-true unless
/// its value expression reduces to the object's own prevision parameter once
/// all other parameters are bound (the bet is called off there).
PointSystem build_points(const Assessment& assessment);

struct SigmaSolution {
  bool feasible = false;
  std::vector<Rat> lambda;  // vertex solution when feasible
  std::vector<Rat> stakes;  // Farkas-derived Dutch-book stakes when infeasible
};

/// Exact feasibility of { lambda >= 0, sum lambda = 1, sum lambda_h Q_h = M }.
SigmaSolution solve_sigma(const PointSystem& ps);

/// Exact maximum of Phi_i over the Sigma polytope; throws InfeasibleSystem.
Rat max_phi(const PointSystem& ps, int i);

Rat phi(const PointSystem& ps, int i, const std::vector<Rat>& lambda);

struct TraceLevel {
  std::vector<int> i0;        // indices (into the augmented family) with M_i = 0
  std::vector<int> subfamily; // the family the level was checked on
  bool shortcut = false;      // all Phi_i positive at the found solution
};

struct DutchBook {
  std::vector<int> objects;  // augmented-family indices the stakes refer to
  std::vector<Rat> stakes;
};

struct CoherenceResult {
  bool coherent = false;
  std::vector<TraceLevel> trace;
  std::optional<DutchBook> witness;   // present iff incoherent and requested
  std::vector<std::string> labels;    // augmented family labels
  std::size_t user_objects = 0;       // prefix that was assessed by the caller
};

/// Full recursive check: solve Sigma, compute the maxima M_i, recurse on the
/// subfamily with I_0 = { i : M_i = 0 } until it is empty or a level fails.
CoherenceResult check_coherence(const Assessment& assessment, bool want_witness = false);

/// Stake vector with uniformly positive gains on the failing level's
/// constituents, when the assessment is incoherent.
std::optional<DutchBook> dutch_book(const Assessment& assessment);

/// Gains g_h of the stake vector over the in-system constituents of `ps`
/// restricted to the listed objects.
std::vector<Rat> gains(const PointSystem& ps, const std::vector<int>& objects,
                       const std::vector<Rat>& stakes);

}  // namespace crq
