// Algebra tables, axiom checks, selectors, composition words, word states,
// and the representability conditions on frozen fixtures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"
#include "oracles.hpp"

using namespace menger;
using oracles::table;

namespace {

// The algebra of the two binary projectors on a 2-point carrier: element 0
// is the first projector, element 1 the second.
FunctionAlgebra projector_algebra() {
  FunctionSet fs(2, 2);
  fs.insert(table(2, 2, "0011"));
  fs.insert(table(2, 2, "0101"));
  return algebra_from_functions(fs);
}

// The closure of the nowhere-defined function with both projectors:
// element 0 is undefined everywhere, elements 1 and 2 are the projectors.
FunctionAlgebra sink_algebra() {
  FunctionSet fs(2, 2);
  fs.insert(PartialFunctionTable::empty(2, 2));
  fs.insert(table(2, 2, "0011"));
  fs.insert(table(2, 2, "0101"));
  return algebra_from_functions(fs);
}

}  // namespace

TEST_CASE("projector algebra has the frozen tables") {
  FunctionAlgebra fa = projector_algebra();
  CHECK(fa.alg.g_size == 2);
  CHECK(fa.alg.n == 2);
  CHECK(fa.closure.size() == 2);
  // Superposing the k-th projector picks the k-th argument.
  CHECK(fa.alg.super == std::vector<Elem>{0, 0, 1, 1, 0, 1, 0, 1});
  CHECK(fa.alg.binops[0] == std::vector<Elem>{0, 1, 1, 1});
  CHECK(fa.alg.binops[1] == std::vector<Elem>{0, 0, 0, 1});
  CHECK(fa.alg.sup2(0, 1, 0) == 1);
  CHECK(fa.alg.mann(0, 1, 0) == 1);
}

TEST_CASE("originals come first in the closure") {
  FunctionSet fs(2, 2);
  fs.insert(table(2, 2, "0110"));
  FunctionAlgebra fa = algebra_from_functions(fs);
  CHECK(fa.closure.size() == 4);
  CHECK(fa.closure.items()[0] == table(2, 2, "0110"));
  CHECK(check_axioms(fa.alg).pass());
  CHECK(check_representability(fa.alg).pass());
}

TEST_CASE("axiom checks pass on function algebras") {
  for (const FunctionAlgebra& fa : {projector_algebra(), sink_algebra()}) {
    AxiomsReport report = check_axioms(fa.alg);
    CHECK(report.pass());
    CHECK(report.associative == std::vector<char>{1, 1});
    CHECK(report.superassociative);
  }
}

TEST_CASE("parallel and serial axiom kernels agree") {
  FunctionAlgebra fa = projector_algebra();
  AxiomsReport fast = check_axioms(fa.alg);
  AxiomsReport slow = check_axioms_serial(fa.alg);
  CHECK(fast.pass() == slow.pass());
  CHECK(fast.associative == slow.associative);
  CHECK(fast.superassociative == slow.superassociative);

  AlgebraTable bad = fa.alg;
  bad.binops[0] = {1, 1, 0, 1};  // logical implication is not associative
  AxiomsReport fast_bad = check_axioms(bad);
  AxiomsReport slow_bad = check_axioms_serial(bad);
  CHECK_FALSE(fast_bad.pass());
  CHECK(fast_bad.associative == slow_bad.associative);
  REQUIRE(fast_bad.assoc_failure[0].has_value());
  // (0 -> 0) -> 0 = 0 but 0 -> (0 -> 0) = 1: first witness in scan order.
  CHECK(fast_bad.assoc_failure[0]->args == std::vector<Elem>{0, 0, 0});
}

TEST_CASE("selectors") {
  FunctionAlgebra fa = projector_algebra();
  std::optional<SelectorSet> sel = find_selectors(fa.alg);
  REQUIRE(sel.has_value());
  CHECK(sel->elems == std::vector<Elem>{0, 1});

  // With a nowhere-defined member no tuple satisfies the selector laws:
  // superposing over the undefined element destroys every value.
  CHECK_FALSE(find_selectors(sink_algebra().alg).has_value());
}

TEST_CASE("composition words evaluate leftmost first") {
  FunctionAlgebra fa = projector_algebra();
  const AlgebraTable& alg = fa.alg;
  CHECK(eval_word(alg, 0, {}) == 0);
  CHECK(eval_word(alg, 0, {{0, 1}}) == alg.mann(0, 0, 1));
  CHECK(eval_word(alg, 0, {{0, 1}, {1, 1}}) ==
        alg.mann(1, alg.mann(0, 0, 1), 1));
  CHECK(eval_word(alg, 1, {{0, 0}}) == 1);
  CHECK(eval_word(alg, 0, {{1, 1}}) == 0);
}

TEST_CASE("word slot arguments") {
  FunctionAlgebra fa = projector_algebra();
  CompositionWord word{{0, 1}, {0, 0}};
  // Slot 0 was touched first with 1, then the substituted argument is
  // composed: later letters act on every filled slot.
  CHECK(slot_argument(fa.alg, word, 0).has_value());
  CHECK_FALSE(slot_argument(fa.alg, word, 1).has_value());
  CHECK(slot_argument_star(fa.alg, word, 1) == fa.alg.g_size + 1);
}

TEST_CASE("word states of the projector algebra") {
  FunctionAlgebra fa = projector_algebra();
  WordStateSpace space = reachable_word_states(fa.alg);
  CHECK(space.consistent);
  CHECK(space.nodes.size() == 8);

  // The empty word: both slots empty, identity action.
  CHECK(space.nodes[0].state == SlotState{2, 3});
  CHECK(space.nodes[0].action == std::vector<Elem>{0, 1});
  CHECK(space.nodes[0].witness.empty());
  CHECK_FALSE(space.nodes[0].full);

  // Both compositions send values into the absorbing element, so the full
  // state (1, 0) is never produced by any word.
  CHECK(space.find_state(SlotState{0, 0}).has_value());
  CHECK(space.find_state(SlotState{0, 1}).has_value());
  CHECK(space.find_state(SlotState{1, 1}).has_value());
  CHECK_FALSE(space.find_state(SlotState{1, 0}).has_value());

  for (const WordStateNode& node : space.nodes) {
    // Replaying the witness word on every element reproduces the action.
    for (Elem g = 0; g < fa.alg.g_size; ++g) {
      CHECK(eval_word(fa.alg, g, node.witness) == node.action[g]);
    }
  }
}

TEST_CASE("word state collision marks inconsistency") {
  FunctionAlgebra fa = projector_algebra();
  AlgebraTable bad = fa.alg;
  bad.binops[0] = {1, 1, 0, 1};
  WordStateSpace space = reachable_word_states(bad);
  CHECK_FALSE(space.consistent);
  REQUIRE(space.collision.has_value());
  // The two colliding words genuinely share their slot pattern but differ
  // in action on some element.
  const auto& [w1, w2] = *space.collision;
  bool differ = false;
  for (Elem g = 0; g < bad.g_size; ++g) {
    if (eval_word(bad, g, w1) != eval_word(bad, g, w2)) differ = true;
  }
  CHECK(differ);
  for (std::uint32_t slot = 0; slot < bad.n; ++slot) {
    CHECK(slot_argument_star(bad, w1, slot) ==
          slot_argument_star(bad, w2, slot));
  }
}

TEST_CASE("representability of function algebras") {
  for (const FunctionAlgebra& fa : {projector_algebra(), sink_algebra()}) {
    RepresentabilityReport report = check_representability(fa.alg);
    CHECK(report.pass());
    CHECK(report.left_composition_law);
    CHECK(report.right_composition_law);
    CHECK(report.covering_word_law);
    CHECK(report.slot_determinacy);
  }
}

TEST_CASE("corrupted table fails the representability conditions") {
  FunctionAlgebra fa = projector_algebra();
  AlgebraTable bad = fa.alg;
  bad.binops[0] = {1, 1, 0, 1};
  RepresentabilityReport report = check_representability(bad);
  CHECK_FALSE(report.pass());
  CHECK_FALSE(report.left_composition_law);
  REQUIRE(report.left_failure.has_value());
  CHECK(report.left_failure->args == std::vector<Elem>{0, 0, 0, 0, 1});
  CHECK_FALSE(report.slot_determinacy);
}

TEST_CASE("sink algebra has the frozen tables") {
  FunctionAlgebra fa = sink_algebra();
  CHECK(fa.alg.g_size == 3);
  CHECK(fa.alg.super ==
        std::vector<Elem>{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 2,
                          2, 0, 0, 0, 0, 1, 2, 0, 1, 2});
  CHECK(fa.alg.binops[0] == std::vector<Elem>{0, 0, 0, 0, 1, 2, 0, 2, 2});
  CHECK(fa.alg.binops[1] == std::vector<Elem>{0, 0, 0, 0, 1, 1, 0, 1, 2});
}

TEST_CASE("algebra table validation") {
  CHECK_THROWS_AS(AlgebraTable(2, 2, std::vector<Elem>(7, 0),
                               {{0, 0, 0, 0}, {0, 0, 0, 0}}),
                  InputError);
  CHECK_THROWS_AS(AlgebraTable(2, 2, std::vector<Elem>(8, 2),
                               {{0, 0, 0, 0}, {0, 0, 0, 0}}),
                  InputError);
  CHECK_THROWS_AS(AlgebraTable(2, 2, std::vector<Elem>(8, 0),
                               {{0, 0, 0, 0}}),
                  InputError);
}
