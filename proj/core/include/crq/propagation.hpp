#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crq/coherence.hpp"

namespace crq {

/// Interval of coherent extensions for one target prevision.
struct ExtensionInterval {
  Rat lower = 0;
  Rat upper = 0;
  bool lower_attained = true;
  bool upper_attained = true;
  bool unbounded_above = false;

  std::string to_string() const;
};

/// Registered closed-form bound families of the propagation rules.
enum class BoundKind {
  conj_K,
  conj_L,
  conj_B,
  conj_S,
  conj_gs,
  iter_C,
  iter_dF,
  iter_F,
  iter_K,
  iter_L,
  iter_B,
  iter_S,
  iter_gs,
  plain_conditional,
};

std::string to_string(BoundKind kind);
std::optional<BoundKind> bound_kind_from_string(const std::string& s);

/// Exact interval of the tabulated formula for the given kind at (x, y) in
/// the unit square; throws OutOfDomain outside it.
ExtensionInterval closed_form_bounds(BoundKind kind, const Rat& x, const Rat& y);

/// The canonical three-object family each bound kind speaks about, over
/// logically independent A, B, H, K, with the third prevision left unbound
/// as the extension target ("z" or "mu").
struct BoundFamily {
  Assessment assessment;
  std::string target;
};
BoundFamily standard_family(BoundKind kind, const Rat& x, const Rat& y);

struct ExtensionOptions {
  Rat tol = Rat(1, 1000000000);     // bracket resolution for the bisection
  Rat cap = Rat(1048576);           // coherent here => reported unbounded above
  Rat snap_eps = Rat(1, 1000000);   // endpoint +/- eps incoherence probe
  std::optional<BoundKind> snap_kind;
  Rat snap_x = 0, snap_y = 0;       // the (x, y) the snap formula is evaluated at
};

/// Coherent extension interval of the single unbound parameter, by bisection
/// over exact coherence checks at rational candidates. When a closed-form
/// kind is registered, endpoints are snapped to the formula value after
/// verifying coherence there and incoherence just outside.
/// Throws MultipleUnbound or BaseIncoherent per the preconditions.
ExtensionInterval extension_interval(const Assessment& assessment,
                                     const ExtensionOptions& options = {});

struct BoundMismatch {
  Rat x, y;
  ExtensionInterval searched;
  ExtensionInterval formula;
};

struct BoundReport {
  BoundKind kind;
  int points_checked = 0;
  std::vector<BoundMismatch> failures;
  bool ok() const { return failures.empty(); }
};

/// Search endpoints vs. closed form on a grid, within `tolerance` on both
/// ends; failures are data, not errors. Snapping is disabled so the two
/// routes stay independent.
BoundReport verify_bounds_match(BoundKind kind, const std::vector<std::pair<Rat, Rat>>& grid,
                                const Rat& tolerance);

}  // namespace crq
