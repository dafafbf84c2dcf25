#include "crq/propagation.hpp"

#include <algorithm>
#include <set>

#include "crq/errors.hpp"

namespace crq {

std::string ExtensionInterval::to_string() const {
  std::string lo = crq::to_string(lower);
  if (unbounded_above) return "[" + lo + ", +inf)";
  return "[" + lo + ", " + crq::to_string(upper) + "]";
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::conj_K: return "conj_K";
    case BoundKind::conj_L: return "conj_L";
    case BoundKind::conj_B: return "conj_B";
    case BoundKind::conj_S: return "conj_S";
    case BoundKind::conj_gs: return "conj_gs";
    case BoundKind::iter_C: return "iter_C";
    case BoundKind::iter_dF: return "iter_dF";
    case BoundKind::iter_F: return "iter_F";
    case BoundKind::iter_K: return "iter_K";
    case BoundKind::iter_L: return "iter_L";
    case BoundKind::iter_B: return "iter_B";
    case BoundKind::iter_S: return "iter_S";
    case BoundKind::iter_gs: return "iter_gs";
    case BoundKind::plain_conditional: return "plain_conditional";
  }
  return "?";
}

std::optional<BoundKind> bound_kind_from_string(const std::string& s) {
  static const std::pair<const char*, BoundKind> table[] = {
      {"conj_K", BoundKind::conj_K},   {"conj_L", BoundKind::conj_L},
      {"conj_B", BoundKind::conj_B},   {"conj_S", BoundKind::conj_S},
      {"conj_gs", BoundKind::conj_gs}, {"iter_C", BoundKind::iter_C},
      {"iter_dF", BoundKind::iter_dF}, {"iter_F", BoundKind::iter_F},
      {"iter_K", BoundKind::iter_K},   {"iter_L", BoundKind::iter_L},
      {"iter_B", BoundKind::iter_B},   {"iter_S", BoundKind::iter_S},
      {"iter_gs", BoundKind::iter_gs}, {"plain_conditional", BoundKind::plain_conditional},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  return std::nullopt;
}

namespace {

Rat rmin(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat rmax(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace

ExtensionInterval closed_form_bounds(BoundKind kind, const Rat& x, const Rat& y) {
  if (x < 0 || x > 1 || y < 0 || y > 1)
    throw OutOfDomain("(x, y) must lie in the unit square");
  ExtensionInterval r;
  const Rat one(1), zero(0);
  switch (kind) {
    case BoundKind::conj_K:
    case BoundKind::conj_L:
      r.lower = 0;
      r.upper = rmin(x, y);
      return r;
    case BoundKind::conj_B:
      r.lower = 0;
      r.upper = 1;
      return r;
    case BoundKind::conj_S:
      r.lower = rmax(x + y - 1, zero);
      r.upper = (x == 1 && y == 1) ? one : (x + y - 2 * x * y) / (1 - x * y);
      return r;
    case BoundKind::conj_gs:
      r.lower = rmax(x + y - 1, zero);
      r.upper = rmin(x, y);
      return r;
    case BoundKind::iter_C:
      r.lower = x * y;
      r.upper = rmax(x, y);
      return r;
    case BoundKind::iter_dF:
      r.lower = 0;
      r.upper = x * y;
      return r;
    case BoundKind::iter_F:
      r.lower = 0;
      r.upper = (x == 0 || y == 0) ? zero : x * y / (x + y - x * y);
      return r;
    case BoundKind::iter_K:
    case BoundKind::iter_L:
      r.lower = 0;
      r.upper = x > 0 ? rmin(one, y / x) : one;
      return r;
    case BoundKind::iter_B:
      r.lower = 0;
      r.upper = (x > 0 && x < 1) ? 1 / x : one;
      return r;
    case BoundKind::iter_S:
      if (x == 0) {
        r.lower = 0;
        r.unbounded_above = true;
        r.upper_attained = false;
        return r;
      }
      r.lower = rmax((x + y - 1) / x, zero);
      r.upper = (x == 1 && y == 1) ? one : (x + y - 2 * x * y) / (x * (1 - x * y));
      return r;
    case BoundKind::iter_gs:
    case BoundKind::plain_conditional:
      r.lower = x > 0 ? rmax(x + y - 1, zero) / x : zero;
      r.upper = x > 0 ? rmin(x, y) / x : one;
      return r;
  }
  throw OutOfDomain("unknown bound kind");
}

BoundFamily standard_family(BoundKind kind, const Rat& x, const Rat& y) {
  Param px{"x", ParamRole::probability};
  Param py{"y", ParamRole::probability};
  Param pz{"z", ParamRole::prevision};
  Param pmu{"mu", ParamRole::prevision};

  BoundFamily out;
  Assessment& a = out.assessment;

  if (kind == BoundKind::plain_conditional) {
    ConditionalEvent A = cond(ev_atom("A"), ev_true());
    ConditionalEvent B = cond(ev_atom("B"), ev_true());
    ConditionalEvent BgA = cond(ev_atom("B"), ev_atom("A"));
    a.assess(indicator(A, px), x);
    a.assess(indicator(B, py), y);
    a.family.push_back(indicator(BgA, pmu));
    out.target = "mu";
    return out;
  }

  ConditionalEvent AH = cond(ev_atom("A"), ev_atom("H"));
  ConditionalEvent BK = cond(ev_atom("B"), ev_atom("K"));

  switch (kind) {
    case BoundKind::conj_K:
    case BoundKind::conj_L:
    case BoundKind::conj_B:
    case BoundKind::conj_S: {
      ConjunctionKind ck = kind == BoundKind::conj_K   ? ConjunctionKind::K
                           : kind == BoundKind::conj_L ? ConjunctionKind::L
                           : kind == BoundKind::conj_B ? ConjunctionKind::B
                                                       : ConjunctionKind::S;
      a.assess(indicator(AH, px), x);
      a.assess(indicator(BK, py), y);
      a.family.push_back(indicator(conjoin_trivalent(ck, AH, BK), pz));
      out.target = "z";
      return out;
    }
    case BoundKind::conj_gs:
      a.assess(indicator(AH, px), x);
      a.assess(indicator(BK, py), y);
      a.family.push_back(conjoin_gs(AH, BK, px, py, pz));
      out.target = "z";
      return out;
    case BoundKind::iter_C:
      // Cooper-Calabrese bound family {A|H, (B|K)|_C(A|H), (A|H) and_S (B|K)},
      // the S-conjunction's probability as target.
      a.assess(indicator(AH, px), x);
      a.assess(indicator(iterate_trivalent(TrivalentIterKind::C, AH, BK), py), y);
      a.family.push_back(indicator(conjoin_trivalent(ConjunctionKind::S, AH, BK), pz));
      out.target = "z";
      return out;
    case BoundKind::iter_dF:
      a.assess(indicator(AH, px), x);
      a.assess(indicator(iterate_trivalent(TrivalentIterKind::dF, AH, BK), py), y);
      a.family.push_back(indicator(conjoin_trivalent(ConjunctionKind::K, AH, BK), pz));
      out.target = "z";
      return out;
    case BoundKind::iter_F:
      a.assess(indicator(AH, px), x);
      a.assess(indicator(iterate_trivalent(TrivalentIterKind::F, AH, BK), py), y);
      a.family.push_back(indicator(conjoin_trivalent(ConjunctionKind::K, AH, BK), pz));
      out.target = "z";
      return out;
    case BoundKind::iter_K:
    case BoundKind::iter_L:
    case BoundKind::iter_B:
    case BoundKind::iter_S:
    case BoundKind::iter_gs: {
      StructuralIterKind ik = kind == BoundKind::iter_K   ? StructuralIterKind::K
                              : kind == BoundKind::iter_L ? StructuralIterKind::L
                              : kind == BoundKind::iter_B ? StructuralIterKind::B
                              : kind == BoundKind::iter_S ? StructuralIterKind::S
                                                          : StructuralIterKind::gs;
      a.assess(indicator(AH, px), x);
      a.assess(indicator(BK, py), y);
      a.family.push_back(iterate_structural(ik, AH, BK, px, py, pmu));
      out.target = "mu";
      return out;
    }
    default:
      break;
  }
  throw OutOfDomain("unknown bound kind");
}

namespace {

// Simplest rational (smallest denominator, then numerator) in [lo, hi],
// by the Stern-Brocot / continued-fraction descent. Requires lo <= hi.
Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (lo == hi) return lo;
  if (lo <= 0 && 0 <= hi) return Rat(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  mpz_class fl = lo.get_num() / lo.get_den(); // floor for lo > 0
  Rat fl_r{fl};
  if (fl_r >= lo && fl_r <= hi) return fl_r;
  Rat next{fl + 1};
  if (next <= hi) return next;
  Rat inner = simplest_between(1 / (hi - fl_r), 1 / (lo - fl_r));
  return fl_r + 1 / inner;
}

std::string find_single_unbound(const Assessment& a) {
  std::set<std::string> required;
  for (const auto& obj : a.family)
    for (const auto& p : obj->all_params()) required.insert(p);
  std::vector<std::string> unbound;
  for (const auto& p : required)
    if (!a.values.count(p)) unbound.push_back(p);
  if (unbound.size() != 1) {
    std::string what;
    for (const auto& p : unbound) what += (what.empty() ? "" : ", ") + p;
    throw MultipleUnbound(unbound.empty() ? "(none)" : what);
  }
  return unbound.front();
}

bool references(const CrqPtr& obj, const std::string& param) {
  for (const auto& p : obj->all_params())
    if (p == param) return true;
  return false;
}

}  // namespace

ExtensionInterval extension_interval(const Assessment& assessment,
                                     const ExtensionOptions& options) {
  const std::string target = find_single_unbound(assessment);

  Assessment base;
  base.values = assessment.values;
  base.constraints = assessment.constraints;
  for (const auto& obj : assessment.family)
    if (!references(obj, target)) base.family.push_back(obj);
  if (!base.family.empty() && !check_coherence(base).coherent) throw BaseIncoherent();

  auto coherent_at = [&](const Rat& v) {
    Assessment tmp = assessment;
    tmp.values[target] = v;
    return check_coherence(tmp).coherent;
  };

  // A coherent seed value.
  std::optional<Rat> seed;
  std::vector<Rat> candidates;
  if (options.snap_kind) {
    ExtensionInterval cf = closed_form_bounds(*options.snap_kind, options.snap_x, options.snap_y);
    candidates.push_back(cf.lower);
    if (!cf.unbounded_above) {
      candidates.push_back(cf.upper);
      candidates.push_back((cf.lower + cf.upper) / 2);
    }
  }
  for (int k = 0; k <= 16; ++k) candidates.push_back(rat(k, 16));
  for (Rat v(2); v <= options.cap; v *= 2) candidates.push_back(v);
  for (const auto& v : candidates) {
    if (v < 0) continue;
    if (coherent_at(v)) {
      seed = v;
      break;
    }
  }
  if (!seed) throw Error("no coherent value for " + target + " found in [0, cap]");

  ExtensionInterval result;

  // Lower endpoint.
  if (coherent_at(Rat(0))) {
    result.lower = 0;
  } else {
    Rat out(0), in = *seed;
    while (in - out > options.tol) {
      Rat mid = (in + out) / 2;
      if (coherent_at(mid))
        in = mid;
      else
        out = mid;
    }
    result.lower = in;
    // The closed-form endpoints are simple rationals; the simplest value in
    // the final bracket recovers them exactly when it is itself coherent.
    Rat simple = simplest_between(out, in);
    if (simple != in && coherent_at(simple)) result.lower = simple;
  }

  // Upper endpoint.
  if (coherent_at(options.cap)) {
    result.unbounded_above = true;
    result.upper_attained = false;
  } else {
    Rat in = *seed, out = options.cap;
    while (out - in > options.tol) {
      Rat mid = (in + out) / 2;
      if (coherent_at(mid))
        in = mid;
      else
        out = mid;
    }
    result.upper = in;
    Rat simple = simplest_between(in, out);
    if (simple != in && coherent_at(simple)) result.upper = simple;
  }

  // Snap to the registered closed form where it survives the endpoint probes.
  if (options.snap_kind) {
    ExtensionInterval cf = closed_form_bounds(*options.snap_kind, options.snap_x, options.snap_y);
    Rat dlo = cf.lower - result.lower;
    if (abs(dlo) <= options.tol && coherent_at(cf.lower) &&
        (cf.lower == 0 || !coherent_at(cf.lower - options.snap_eps)))
      result.lower = cf.lower;
    if (!result.unbounded_above && !cf.unbounded_above) {
      Rat dhi = cf.upper - result.upper;
      if (abs(dhi) <= options.tol && coherent_at(cf.upper) &&
          !coherent_at(cf.upper + options.snap_eps))
        result.upper = cf.upper;
    }
  }
  return result;
}

BoundReport verify_bounds_match(BoundKind kind, const std::vector<std::pair<Rat, Rat>>& grid,
                                const Rat& tolerance) {
  BoundReport report;
  report.kind = kind;
  for (const auto& [x, y] : grid) {
    ExtensionInterval cf = closed_form_bounds(kind, x, y);
    BoundFamily bf = standard_family(kind, x, y);
    ExtensionOptions opt; // no snapping: keep the two routes independent
    ExtensionInterval found = extension_interval(bf.assessment, opt);
    ++report.points_checked;
    bool ok = found.unbounded_above == cf.unbounded_above &&
              abs(found.lower - cf.lower) <= tolerance;
    if (ok && !cf.unbounded_above) ok = abs(found.upper - cf.upper) <= tolerance;
    if (!ok) report.failures.push_back(BoundMismatch{x, y, found, cf});
  }
  return report;
}

}  // namespace crq
