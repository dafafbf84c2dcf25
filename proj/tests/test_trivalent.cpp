#include <doctest.h>

#include "crq/trivalent.hpp"

using namespace crq;

namespace {

World world_of(std::initializer_list<std::pair<const char*, bool>> xs) {
  World w;
  for (const auto& [k, v] : xs) w.assignment[k] = v;
  return w;
}

ConditionalEvent AH() { return cond(ev_atom("A"), ev_atom("H")); }
ConditionalEvent BK() { return cond(ev_atom("B"), ev_atom("K")); }

std::vector<World> four_atom_worlds() {
  std::vector<World> out;
  for (int m = 0; m < 16; ++m)
    out.push_back(world_of({{"A", bool(m & 1)},
                            {"B", bool(m & 2)},
                            {"H", bool(m & 4)},
                            {"K", bool(m & 8)}}));
  return out;
}

const std::vector<ConjunctionKind> kAllConj{ConjunctionKind::K, ConjunctionKind::L,
                                            ConjunctionKind::B, ConjunctionKind::S};

}  // namespace

TEST_CASE("truth values of a conditional event") {
  CHECK(truth_value(BK(), world_of({{"B", true}, {"K", true}})) == TrivalentValue::True);
  CHECK(truth_value(BK(), world_of({{"B", true}, {"K", false}})) == TrivalentValue::Void);
  CHECK(truth_value(AH(), world_of({{"A", false}, {"H", true}})) == TrivalentValue::False);
}

TEST_CASE("negation is consequent negation and an involution") {
  ConditionalEvent n = negate(AH());
  CHECK(semantically_equal(n, cond(ev_not(ev_atom("A")), ev_atom("H"))));
  CHECK(semantically_equal(negate(n), AH()));

  ConditionalEvent omega_h = cond(ev_true(), ev_atom("H"));
  ConditionalEvent neg = negate(omega_h);
  for (const auto& w : four_atom_worlds())
    if (w.assignment.at("H")) CHECK(truth_value(neg, w) == TrivalentValue::False);
}

TEST_CASE("Goodman-Nguyen inclusion") {
  CHECK(gn_implies(AH(), AH()));
  ConditionalEvent abh = cond(ev_and(ev_atom("A"), ev_atom("B")), ev_atom("H"));
  CHECK(gn_implies(abh, AH()));
  CHECK_FALSE(gn_implies(AH(), BK()));
}

TEST_CASE("conjunction antecedents match their definitions") {
  ConditionalEvent k = conjoin_trivalent(ConjunctionKind::K, AH(), BK());
  CHECK(semantically_equal(
      k, cond(ev_and(ev_and(ev_atom("A"), ev_atom("H")), ev_and(ev_atom("B"), ev_atom("K"))),
              ev_or({ev_and(ev_atom("H"), ev_atom("K")),
                     ev_and(ev_not(ev_atom("A")), ev_atom("H")),
                     ev_and(ev_not(ev_atom("B")), ev_atom("K"))}))));

  // (A|H) or_B (B|K) has antecedent HK.
  ConditionalEvent db = disjoin_trivalent(ConjunctionKind::B, AH(), BK());
  for (const auto& w : four_atom_worlds()) {
    bool hk = w.assignment.at("H") && w.assignment.at("K");
    CHECK((truth_value(db, w) != TrivalentValue::Void) == hk);
  }

  // B-conjunction of a conditional with itself is the conditional.
  CHECK(semantically_equal(conjoin_trivalent(ConjunctionKind::B, AH(), AH()), AH()));
}

TEST_CASE("Sobocinski compounds at spot rows") {
  ConditionalEvent s = conjoin_trivalent(ConjunctionKind::S, AH(), BK());
  World w = world_of({{"A", true}, {"B", false}, {"H", true}, {"K", false}});
  CHECK(truth_value(s, w) == TrivalentValue::True);

  ConditionalEvent d = disjoin_trivalent(ConjunctionKind::S, AH(), BK());
  World w2 = world_of({{"A", false}, {"B", true}, {"H", false}, {"K", true}});
  CHECK(truth_value(d, w2) == TrivalentValue::True);
}

TEST_CASE("commutativity and associativity, all four conjunctions and disjunctions") {
  std::vector<ConditionalEvent> pool{
      AH(), BK(), cond(ev_atom("H"), ev_atom("B")),
      cond(ev_or(ev_atom("A"), ev_atom("B")), ev_atom("K")),
      cond(ev_atom("K"), ev_and(ev_atom("A"), ev_atom("H")))};

  for (ConjunctionKind kind : kAllConj) {
    for (const auto& x : pool)
      for (const auto& y : pool) {
        CHECK(semantically_equal(conjoin_trivalent(kind, x, y), conjoin_trivalent(kind, y, x)));
        CHECK(semantically_equal(disjoin_trivalent(kind, x, y), disjoin_trivalent(kind, y, x)));
      }
    for (const auto& x : pool)
      for (const auto& y : pool)
        for (const auto& z : pool) {
          ConditionalEvent left = conjoin_trivalent(kind, conjoin_trivalent(kind, x, y), z);
          ConditionalEvent right = conjoin_trivalent(kind, x, conjoin_trivalent(kind, y, z));
          CHECK(semantically_equal(left, right));
          ConditionalEvent dleft = disjoin_trivalent(kind, disjoin_trivalent(kind, x, y), z);
          ConditionalEvent dright = disjoin_trivalent(kind, x, disjoin_trivalent(kind, y, z));
          CHECK(semantically_equal(dleft, dright));
        }
  }
}

TEST_CASE("idempotence: K, B, S absorb a repeated factor; L does not") {
  for (ConjunctionKind kind : {ConjunctionKind::K, ConjunctionKind::B, ConjunctionKind::S})
    CHECK(semantically_equal(conjoin_trivalent(kind, AH(), AH()), AH()));

  // Lukasiewicz: void and void is false, so repeating a factor changes the
  // compound at the both-void constituent.
  ConditionalEvent once = conjoin_trivalent(ConjunctionKind::L, AH(), BK());
  ConditionalEvent twice = conjoin_trivalent(ConjunctionKind::L, AH(), once);
  CHECK_FALSE(semantically_equal(conjoin_trivalent(ConjunctionKind::L, AH(), AH()), AH()));
  CHECK_FALSE(semantically_equal(once, twice));
  World hbk = world_of({{"A", false}, {"B", true}, {"H", false}, {"K", true}});
  CHECK(truth_value(once, hbk) == TrivalentValue::Void);
  CHECK(truth_value(twice, hbk) == TrivalentValue::False);
}

TEST_CASE("De Morgan duality pointwise over worlds") {
  std::vector<ConditionalEvent> pool{AH(), BK(), cond(ev_atom("H"), ev_atom("B"))};
  for (ConjunctionKind kind : kAllConj)
    for (const auto& x : pool)
      for (const auto& y : pool) {
        CHECK(semantically_equal(negate(conjoin_trivalent(kind, x, y)),
                                 disjoin_trivalent(kind, negate(x), negate(y))));
        CHECK(semantically_equal(negate(disjoin_trivalent(kind, x, y)),
                                 conjoin_trivalent(kind, negate(x), negate(y))));
      }
}

TEST_CASE("iterated conditionals: definitions and import-export") {
  // (B|K)|_i A with unconditional antecedent reduces to B|AK for all three.
  ConditionalEvent A = cond(ev_atom("A"), ev_true());
  ConditionalEvent bak = cond(ev_atom("B"), ev_and(ev_atom("A"), ev_atom("K")));
  for (TrivalentIterKind kind :
       {TrivalentIterKind::C, TrivalentIterKind::dF, TrivalentIterKind::F})
    CHECK(semantically_equal(iterate_trivalent(kind, A, BK()), bak));

  // (B|K)|_C A with H = TRUE equals B|AK textually too.
  ConditionalEvent c = iterate_trivalent(TrivalentIterKind::C, A, BK());
  CHECK(semantically_equal(c, bak));

  // (B|K)|_dF(A|H) is void whenever notA H holds.
  ConditionalEvent df = iterate_trivalent(TrivalentIterKind::dF, AH(), BK());
  for (const auto& w : four_atom_worlds())
    if (!w.assignment.at("A") && w.assignment.at("H"))
      CHECK(truth_value(df, w) == TrivalentValue::Void);

  // (B|K)|_F(A|H) is void at A H notK.
  ConditionalEvent f = iterate_trivalent(TrivalentIterKind::F, AH(), BK());
  CHECK(truth_value(f, world_of({{"A", true}, {"B", true}, {"H", true}, {"K", false}})) ==
        TrivalentValue::Void);
}

TEST_CASE("P1 as a trivalent identity for dF and F; the C counterexample") {
  ConditionalEvent conj_k = conjoin_trivalent(ConjunctionKind::K, AH(), BK());
  for (TrivalentIterKind kind : {TrivalentIterKind::dF, TrivalentIterKind::F}) {
    ConditionalEvent lhs = iterate_trivalent(kind, AH(), conj_k);
    ConditionalEvent rhs = iterate_trivalent(kind, AH(), BK());
    CHECK(semantically_equal(lhs, rhs));
  }

  // At A H notK the C-iterated conditional is void while the P1 left side
  // is true.
  ConditionalEvent conj_s = conjoin_trivalent(ConjunctionKind::S, AH(), BK());
  ConditionalEvent lhs = iterate_trivalent(TrivalentIterKind::C, AH(), conj_s);
  ConditionalEvent rhs = iterate_trivalent(TrivalentIterKind::C, AH(), BK());
  World w = world_of({{"A", true}, {"B", true}, {"H", true}, {"K", false}});
  CHECK(truth_value(rhs, w) == TrivalentValue::Void);
  CHECK(truth_value(lhs, w) == TrivalentValue::True);
  CHECK_FALSE(semantically_equal(lhs, rhs));
}

TEST_CASE("P2 spot checks: K-conjunction included in dF and F iterates, S in C not") {
  ConditionalEvent conj_k = conjoin_trivalent(ConjunctionKind::K, AH(), BK());
  CHECK(gn_implies(conj_k, iterate_trivalent(TrivalentIterKind::dF, AH(), BK())));
  CHECK(gn_implies(conj_k, iterate_trivalent(TrivalentIterKind::F, AH(), BK())));

  ConditionalEvent conj_s = conjoin_trivalent(ConjunctionKind::S, AH(), BK());
  CHECK_FALSE(gn_implies(conj_s, iterate_trivalent(TrivalentIterKind::C, AH(), BK())));
}

TEST_CASE("impossible antecedents are rejected") {
  CHECK_THROWS_AS(cond(ev_atom("A"), ev_false()), ImpossibleAntecedent);
  // dF iterate needs AHK possible.
  EventPtr A = ev_atom("A"), H = ev_atom("H"), K = ev_atom("K");
  std::vector<EventPtr> constraints{ev_not(ev_and(ev_and(A, H), K))};
  CHECK_THROWS_AS(
      iterate_trivalent(TrivalentIterKind::dF, cond(A, H, constraints),
                        cond(ev_atom("B"), K, constraints), constraints),
      ImpossibleAntecedent);
}
