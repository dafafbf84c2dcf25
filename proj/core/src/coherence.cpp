#include "crq/coherence.hpp"

#include <algorithm>
#include <map>

#include "crq/errors.hpp"

namespace crq {

Assessment augment(const Assessment& assessment) {
  Assessment out = assessment;
  for (const auto& obj : assessment.family) {
    for (const auto& comp : obj->companions) {
      Rat v(1);
      for (const auto& p : comp.product_params) {
        auto it = out.values.find(p);
        if (it == out.values.end()) throw UnboundParam(p);
        v *= it->second;
      }
      const std::string& zname = comp.object->prevision.name;
      auto it = out.values.find(zname);
      if (it != out.values.end() && it->second != v)
        throw Error("companion parameter " + zname + " bound inconsistently");
      out.values[zname] = v;
      out.family.push_back(comp.object);
    }
  }
  return out;
}

namespace {

struct WorldSignature {
  std::vector<Rat> values;
  std::vector<bool> live;

  bool operator<(const WorldSignature& o) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < o.values[i]) return true;
      if (o.values[i] < values[i]) return false;
      if (live[i] != o.live[i]) return o.live[i];
    }
    return false;
  }
};

}  // namespace

PointSystem build_points(const Assessment& assessment) {
  if (assessment.family.empty()) throw EmptyFamily();
  const auto& family = assessment.family;
  const auto& binding = assessment.values;

  std::vector<EventPtr> all;
  for (const auto& obj : family) {
    all.push_back(obj->conditioning);
    for (const auto& [region, value] : obj->pieces) all.push_back(region);
  }
  for (const auto& c : assessment.constraints) all.push_back(c);
  Universe u = Universe::over(all);

  PointSystem ps;
  ps.target.reserve(family.size());
  for (const auto& obj : family) {
    auto it = binding.find(obj->prevision.name);
    if (it == binding.end()) throw UnboundParam(obj->prevision.name);
    ps.target.push_back(it->second);
    ps.labels.push_back(obj->label);
  }

  // Value and effective-liveness of each object on each admissible world.
  std::map<WorldSignature, std::vector<std::uint32_t>> groups;
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    bool admissible = true;
    for (const auto& c : assessment.constraints)
      if (!evaluate_mask(c, u, m)) {
        admissible = false;
        break;
      }
    if (!admissible) continue;

    WorldSignature sig;
    sig.values.reserve(family.size());
    sig.live.reserve(family.size());
    for (const auto& obj : family) {
      const AffineExpr* expr = &obj->off_value;
      if (evaluate_mask(obj->conditioning, u, m)) {
        bool found = false;
        for (const auto& [region, value] : obj->pieces)
          if (evaluate_mask(region, u, m)) {
            expr = &value;
            found = true;
            break;
          }
        if (!found) throw Error("world not covered by any piece of " + obj->label);
      }
      AffineExpr own = expr->bind_except(binding, obj->prevision.name);
      sig.live.push_back(!own.is_param(obj->prevision.name));
      sig.values.push_back(expr->evaluate(binding));
    }
    groups[sig].push_back(m);
  }

  std::vector<std::pair<std::uint32_t, const std::pair<const WorldSignature, std::vector<std::uint32_t>>*>> order;
  const std::pair<const WorldSignature, std::vector<std::uint32_t>>* c0 = nullptr;
  for (const auto& g : groups) {
    bool any_live = std::find(g.first.live.begin(), g.first.live.end(), true) != g.first.live.end();
    if (!any_live) {
      c0 = &g;
      continue;
    }
    order.emplace_back(g.second.front(), &g);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  auto make_constituent = [&](const std::vector<std::uint32_t>& masks, int index) {
    Constituent c;
    c.universe = u;
    c.masks = masks;
    std::vector<EventPtr> terms;
    for (auto m : masks) {
      std::vector<EventPtr> lits;
      for (std::size_t i = 0; i < u.atoms.size(); ++i) {
        EventPtr a = ev_atom(u.atoms[i]);
        lits.push_back(((m >> i) & 1u) ? a : ev_not(a));
      }
      terms.push_back(ev_and(lits));
    }
    c.formula = ev_or(terms);
    c.index = index;
    return c;
  };

  ps.antecedent_masks.assign(family.size(), {});
  int idx = 1;
  for (const auto& [first, g] : order) {
    (void)first;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (g->first.live[i]) ps.antecedent_masks[i].push_back(int(ps.points.size()));
    ps.points.push_back(g->first.values);
    ps.constituents.push_back(make_constituent(g->second, idx++));
  }
  if (c0) ps.constituents.push_back(make_constituent(c0->second, 0));
  if (ps.points.empty())
    throw Error("no constituent implies the disjunction of the conditioning events");
  return ps;
}

namespace {

LinearProgram sigma_lp(const PointSystem& ps) {
  const std::size_t n = ps.target.size();
  const std::size_t m = ps.points.size();
  LinearProgram lp;
  lp.A.assign(n + 1, std::vector<Rat>(m, Rat(0)));
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t i = 0; i < n; ++i) lp.A[i][h] = ps.points[h][i];
    lp.A[n][h] = 1;
  }
  lp.b = ps.target;
  lp.b.push_back(Rat(1));
  lp.c.assign(m, Rat(0));
  return lp;
}

}  // namespace

SigmaSolution solve_sigma(const PointSystem& ps) {
  LinearProgram lp = sigma_lp(ps);
  LpSolution s = lp_solve(lp);
  SigmaSolution out;
  if (s.status == LpStatus::Optimal) {
    out.feasible = true;
    out.lambda = s.x;
    return out;
  }
  // Farkas y over n value rows + the convexity row; stakes flip the sign so
  // that gains come out uniformly positive.
  out.feasible = false;
  out.stakes.reserve(ps.target.size());
  for (std::size_t i = 0; i < ps.target.size(); ++i) out.stakes.push_back(-s.farkas[i]);
  return out;
}

Rat phi(const PointSystem& ps, int i, const std::vector<Rat>& lambda) {
  Rat v(0);
  for (int h : ps.antecedent_masks[i]) v += lambda[h];
  return v;
}

Rat max_phi(const PointSystem& ps, int i) {
  LinearProgram lp = sigma_lp(ps);
  for (int h : ps.antecedent_masks[i]) lp.c[h] = 1;
  LpSolution s = lp_solve(lp);
  if (s.status != LpStatus::Optimal) throw InfeasibleSystem();
  return s.objective;
}

std::vector<Rat> gains(const PointSystem& ps, const std::vector<int>& objects,
                       const std::vector<Rat>& stakes) {
  std::vector<Rat> g;
  g.reserve(ps.points.size());
  for (const auto& q : ps.points) {
    Rat v(0);
    for (std::size_t k = 0; k < objects.size(); ++k)
      v += stakes[k] * (q[objects[k]] - ps.target[objects[k]]);
    g.push_back(v);
  }
  return g;
}

namespace {

// One recursion level of the coherence check on the object subset `idx`
// (indices into the augmented family).
bool check_level(const Assessment& aug, std::vector<int> idx, bool want_witness,
                 CoherenceResult& result) {
  Assessment level;
  level.values = aug.values;
  level.constraints = aug.constraints;
  for (int i : idx) level.family.push_back(aug.family[i]);

  PointSystem ps = build_points(level);
  SigmaSolution sol = solve_sigma(ps);
  if (!sol.feasible) {
    if (want_witness) {
      DutchBook w;
      w.objects = idx;
      w.stakes = sol.stakes;
      result.witness = std::move(w);
    }
    return false;
  }

  // Subset shortcut: the found solution alone is a valid solution subset; if
  // every Phi_i is already positive there, I_0 is empty and the level is coherent.
  bool all_positive = true;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (phi(ps, int(i), sol.lambda) == 0) {
      all_positive = false;
      break;
    }
  if (all_positive) {
    result.trace.push_back(TraceLevel{{}, idx, true});
    return true;
  }

  std::vector<int> i0_local;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (max_phi(ps, int(i)) == 0) i0_local.push_back(int(i));

  TraceLevel level_trace;
  level_trace.subfamily = idx;
  for (int i : i0_local) level_trace.i0.push_back(idx[i]);
  result.trace.push_back(level_trace);

  if (i0_local.empty()) return true;

  std::vector<int> sub;
  for (int i : i0_local) sub.push_back(idx[i]);
  return check_level(aug, std::move(sub), want_witness, result);
}

}  // namespace

CoherenceResult check_coherence(const Assessment& assessment, bool want_witness) {
  if (assessment.family.empty()) throw EmptyFamily();
  Assessment aug = augment(assessment);

  CoherenceResult result;
  result.user_objects = assessment.family.size();
  for (const auto& obj : aug.family) result.labels.push_back(obj->label);

  std::vector<int> idx(aug.family.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  result.coherent = check_level(aug, std::move(idx), want_witness, result);
  if (result.coherent) result.witness.reset();
  return result;
}

std::optional<DutchBook> dutch_book(const Assessment& assessment) {
  CoherenceResult r = check_coherence(assessment, true);
  if (r.coherent) return std::nullopt;
  return r.witness;
}

}  // namespace crq
