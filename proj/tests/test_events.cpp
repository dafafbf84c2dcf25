#include <doctest.h>

#include "crq/events.hpp"

using namespace crq;

namespace {

World world_of(std::initializer_list<std::pair<const char*, bool>> xs) {
  World w;
  for (const auto& [k, v] : xs) w.assignment[k] = v;
  return w;
}

PartitionedObject conditional_object(const EventPtr& cons, const EventPtr& ante) {
  PartitionedObject po;
  po.antecedent = ante;
  po.pieces = {ev_and(cons, ante), ev_and(ev_not(cons), ante)};
  return po;
}

}  // namespace

TEST_CASE("evaluate: Boolean semantics") {
  EventPtr A = ev_atom("A"), H = ev_atom("H"), K = ev_atom("K");
  CHECK_FALSE(evaluate(ev_and(A, ev_not(A)), world_of({{"A", true}})));
  CHECK_FALSE(evaluate(ev_and(A, ev_not(A)), world_of({{"A", false}})));
  CHECK(evaluate(ev_true(), world_of({})));
  CHECK(evaluate(ev_and(ev_or(ev_not(H), A), K),
                 world_of({{"A", true}, {"H", true}, {"K", true}})));
  CHECK_THROWS_AS(evaluate(A, world_of({{"B", true}})), UnknownAtom);
}

TEST_CASE("is_possible under constraints") {
  EventPtr A = ev_atom("A"), B = ev_atom("B"), K = ev_atom("K");
  CHECK_FALSE(is_possible(ev_and(A, ev_not(A)), {}));
  CHECK(is_possible(A, {ev_or(ev_not(A), B)}));
  EventPtr ank = ev_and(A, ev_not(K));
  CHECK_FALSE(is_possible(ank, {ev_not(ank)}));
}

TEST_CASE("constituents: logically independent families") {
  EventPtr A = ev_atom("A"), B = ev_atom("B"), H = ev_atom("H"), K = ev_atom("K");

  SUBCASE("two conditionals give 9 = 3^2 constituents") {
    auto cs = constituents({conditional_object(A, H), conditional_object(B, K)});
    CHECK(cs.size() == 9);
    CHECK(cs.back().index == 0);
  }

  SUBCASE("3^n growth for n independent conditionals, n <= 4") {
    std::vector<PartitionedObject> fam;
    const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "I"};
    for (int n = 1; n <= 4; ++n) {
      fam.clear();
      for (int i = 0; i < n; ++i)
        fam.push_back(conditional_object(ev_atom(names[2 * i]), ev_atom(names[2 * i + 1])));
      std::size_t count = constituents(fam).size();
      std::size_t want = 1;
      for (int i = 0; i < n; ++i) want *= 3;
      CHECK(count == want);
    }
  }

  SUBCASE("nested-antecedent pair: 5 constituents, C0 = not K") {
    EventPtr second_ante = ev_and(K, ev_or(ev_not(H), A));
    auto cs = constituents({conditional_object(B, K), conditional_object(B, second_ante)});
    REQUIRE(cs.size() == 5);
    const Constituent& c0 = cs.back();
    REQUIRE(c0.index == 0);
    for (const auto& w : c0.worlds()) CHECK_FALSE(evaluate(K, w));
    // every not-K world lands in C0
    CHECK(c0.masks.size() == 8);
  }
}

TEST_CASE("constituents partition the admissible worlds") {
  EventPtr A = ev_atom("A"), B = ev_atom("B"), H = ev_atom("H"), K = ev_atom("K");
  std::vector<EventPtr> constraints{ev_or(ev_not(A), K)}; // A implies K
  auto fam = std::vector<PartitionedObject>{
      conditional_object(A, H), conditional_object(B, ev_or(H, K))};
  auto cs = constituents(fam, constraints);

  Universe u = cs.front().universe;
  std::size_t covered = 0;
  for (std::uint32_t m = 0; m < u.world_count(); ++m) {
    bool admissible = true;
    for (const auto& c : constraints)
      if (!evaluate_mask(c, u, m)) admissible = false;
    int hits = 0;
    for (const auto& c : cs)
      if (c.implied_by_mask(m)) ++hits;
    CHECK(hits == (admissible ? 1 : 0));
    if (admissible) ++covered;
  }
  CHECK(covered > 0);
}

TEST_CASE("is_possible agrees with brute-force enumeration on random formulas") {
  const char* names[] = {"A", "B", "C", "D", "E", "F"};
  std::uint64_t state = 12345;
  auto rnd = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return std::uint32_t(state >> 33);
  };
  auto random_formula = [&](auto&& self, int depth) -> EventPtr {
    switch (rnd() % (depth > 2 ? 2 : 5)) {
      case 0:
        return ev_atom(names[rnd() % 6]);
      case 1:
        return ev_not(ev_atom(names[rnd() % 6]));
      case 2:
        return ev_and(self(self, depth + 1), self(self, depth + 1));
      case 3:
        return ev_or(self(self, depth + 1), self(self, depth + 1));
      default:
        return rnd() % 2 ? ev_true() : ev_false();
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    EventPtr f = random_formula(random_formula, 0);
    EventPtr c = random_formula(random_formula, 1);
    Universe u = Universe::over({f, c});
    bool brute = false;
    for (std::uint32_t m = 0; m < u.world_count() && !brute; ++m)
      brute = evaluate(f, u.world(m)) && evaluate(c, u.world(m));
    CHECK(is_possible(f, {c}) == brute);
  }
}

TEST_CASE("constituents: empty family is an error") {
  CHECK_THROWS_AS(constituents({}), EmptyFamily);
}
