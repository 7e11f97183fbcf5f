#pragma once

// Abstract finite algebras with one (n+1)-ary superposition and n binary
// slotwise compositions: tables, axiom checks (with parallel and serial
// reference kernels), selector detection, composition words and their slot
// states, and the representability conditions.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "menger/core.hpp"
#include "menger/nfun.hpp"

namespace menger {

// Operation tables of a finite algebra of g_size elements: `super` holds the
// (n+1)-ary operation in row-major order of (x, y_1, ..., y_n) with x most
// significant; binops[slot] holds x o_slot y at index x * g_size + y.
struct AlgebraTable {
  std::uint32_t g_size = 0;
  std::uint32_t n = 0;
  std::vector<Elem> super;
  std::vector<std::vector<Elem>> binops;

  AlgebraTable() = default;
  AlgebraTable(std::uint32_t size, std::uint32_t arity,
               std::vector<Elem> super_table,
               std::vector<std::vector<Elem>> binop_tables);

  Elem sup(std::span<const Elem> xs) const;  // xs = (x, y_1..y_n)
  Elem sup2(Elem x, Elem y1, Elem y2) const {  // arity-2 fast path
    return super[(static_cast<std::size_t>(x) * g_size + y1) * g_size + y2];
  }
  Elem mann(std::uint32_t slot, Elem x, Elem y) const {
    return binops[slot][static_cast<std::size_t>(x) * g_size + y];
  }

  bool operator==(const AlgebraTable& other) const = default;
};

// One counterexample to an identity: the argument tuple that violates it.
struct IdentityFailure {
  std::vector<Elem> args;
};

struct AxiomsReport {
  // One verdict per slotwise composition, plus a (x,y,z) witness on failure.
  std::vector<char> associative;
  std::vector<std::optional<IdentityFailure>> assoc_failure;
  // Superposition associativity over (x, y_1..y_n, z_1..z_n).
  bool superassociative = false;
  std::optional<IdentityFailure> superassoc_failure;

  bool pass() const;
};

// Checks the algebra axioms with the optimized kernel (parallelized across
// tuple blocks when OpenMP is available).  Counterexamples are the first in
// row-major argument order.
AxiomsReport check_axioms(const AlgebraTable& alg);

// Straightforward nested-loop reference for the same checks; used to validate
// the optimized kernel and as the benchmark baseline.
AxiomsReport check_axioms_serial(const AlgebraTable& alg);

// Selector tuple: elements e_0..e_{n-1} acting as per-slot identities.
struct SelectorSet {
  std::vector<Elem> elems;
};

// Scans all n-tuples for the selector laws; empty if none qualify.  Two
// distinct qualifying tuples violate uniqueness and raise InternalError.
std::optional<SelectorSet> find_selectors(const AlgebraTable& alg);

// A composition word: a sequence of (slot, element) pairs applied leftmost
// first, x . w = (..(x o_{s1} y_1) o_{s2} y_2 ..).
struct WordLetter {
  std::uint32_t slot;
  Elem elem;
};
using CompositionWord = std::vector<WordLetter>;

Elem eval_word(const AlgebraTable& alg, Elem x, const CompositionWord& word);

// Per-slot substitution state of a word: slot i holds the element the word
// feeds into that slot, or stays empty.  Encoded over the star index set
// {0..g_size-1} + selector ids: an empty slot i is encoded as g_size + i.
using SlotState = std::vector<Elem>;

// Star index of the element the word substitutes into `slot`; equals
// g_size + slot when the word never touches that slot.
Elem slot_argument_star(const AlgebraTable& alg, const CompositionWord& word,
                        std::uint32_t slot);
// Same, but empty slots come back as nullopt.
std::optional<Elem> slot_argument(const AlgebraTable& alg,
                                  const CompositionWord& word,
                                  std::uint32_t slot);

// One reachable word state: the slot pattern, the action g -> g.w of the
// word on the algebra, and the first word (in BFS order) realizing it.
struct WordStateNode {
  SlotState state;
  std::vector<Elem> action;
  CompositionWord witness;
  bool full = false;  // no empty slot
};

// Breadth-first closure of (slot state, action) pairs over all one-letter
// extensions, starting from the empty word.  `consistent` reports whether
// the slot state determines the action (two words with equal states but
// different actions make it false, with the two witness words recorded, and
// the search stops at the first such collision).
struct WordStateSpace {
  std::vector<WordStateNode> nodes;  // nodes[0] is the empty word
  bool consistent = true;
  std::optional<std::pair<CompositionWord, CompositionWord>> collision;

  // Index of the node with this slot state, if reached.
  std::optional<std::size_t> find_state(const SlotState& s) const;

 private:
  friend WordStateSpace reachable_word_states(const AlgebraTable&);
  std::vector<std::pair<SlotState, std::size_t>> state_index_;
};

WordStateSpace reachable_word_states(const AlgebraTable& alg);

struct RepresentabilityReport {
  // Composition feeding a superposition slot: [x o_i y, z] equals
  // [x, z_1, ..., [y, z], ..., z_n] with the inner bracket at slot i.
  bool left_composition_law = false;
  std::optional<IdentityFailure> left_failure;  // (slot, x, y, z_1..z_n)
  // Composition after a superposition distributes into every slot:
  // [x, y_1..y_n] o_i z equals [x, y_1 o_i z, ..., y_n o_i z].
  bool right_composition_law = false;
  std::optional<IdentityFailure> right_failure;  // (slot, x, y_1..y_n, z)
  // Words that substitute into every slot act like the superposition of
  // their slot arguments.
  bool covering_word_law = false;
  std::optional<CompositionWord> covering_failure_word;
  std::optional<Elem> covering_failure_elem;
  // Equal slot states force equal actions.
  bool slot_determinacy = false;
  std::optional<std::pair<CompositionWord, CompositionWord>> determinacy_failure;

  bool pass() const {
    return left_composition_law && right_composition_law &&
           covering_word_law && slot_determinacy;
  }
};

RepresentabilityReport check_representability(const AlgebraTable& alg);

// Result of closing a function set and reading off its operation tables:
// element k of the algebra is closure[k]; the first fs.size() elements are
// the original set in order.
struct FunctionAlgebra {
  AlgebraTable alg;
  FunctionSet closure;
};

FunctionAlgebra algebra_from_functions(const FunctionSet& fs,
                                       std::size_t cap = kDefaultCap);

}  // namespace menger
