#pragma once

// Binary-relation machinery on abstract algebras: regularity properties,
// left ideals, polynomial orbits, orbit-based separation relations,
// determining pairs over an evaluation domain, class-indexed simplest
// representations, per-tuple decomposition of function representations, the
// word criterion for image inclusion, and representations of ordered
// algebras realizing a prescribed inclusion order.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"
#include "menger/represent.hpp"

namespace menger {

// A counterexample to a relation property: which clause broke and the raw
// elements witnessing it (layout documented at each producing operation).
struct RelationFailure {
  std::string clause;
  std::vector<Elem> args;
};

struct RegularityReport {
  bool v_regular = false;  // premises may be composed on the inside
  bool l_regular = false;  // premises may be composed on the outside
  bool stable = false;     // both sides may vary at once
  std::optional<RelationFailure> v_failure;
  std::optional<RelationFailure> l_failure;
  std::optional<RelationFailure> stable_failure;
};

// Exhaustively decides the three compatibility properties of a relation on
// the algebra's carrier.  For reflexive transitive relations, stability is
// equivalent to the conjunction of the other two; that equivalence is
// asserted (InternalError on violation).
RegularityReport relation_properties(const AlgebraTable& alg,
                                     const BinaryRelation& rel);

struct LeftIdealReport {
  bool is_ideal = false;
  bool empty = false;
  std::optional<RelationFailure> failure;
};

// Whether the subset absorbs superposition through any single argument slot
// and composition on the right.
LeftIdealReport is_l_ideal(const AlgebraTable& alg,
                           const std::vector<char>& subset);

// Least set containing x and closed under the one-step polynomial maps
// u -> super(g, w-tuple with u in one slot) and u -> g composed with u at a
// slot.  Returned as a membership mask over the carrier.
std::vector<char> polynomial_orbit(const AlgebraTable& alg, Elem x);

// Pairs reachable from (x, y) by applying each one-step polynomial map to
// both coordinates simultaneously.
BinaryRelation pair_orbit(const AlgebraTable& alg, Elem x, Elem y);

struct OrbitSeparation {
  // (x, y) related iff no polynomial image separates x from y relative to
  // the reference subset.
  BinaryRelation relation;
  // Elements whose whole polynomial orbit misses the reference subset.
  std::vector<char> unreachable;
};

// The separation relation and unreachable set of a reference subset.
// Postconditions asserted: the relation is a v-regular equivalence; the
// unreachable set is empty or a single class of it, and, when nonempty, a
// left ideal.
OrbitSeparation orbit_separation(const AlgebraTable& alg,
                                 const std::vector<char>& subset);

// A candidate determining pair: a symmetric transitive relation and a
// kernel subset over the star indices of an evaluation domain.
struct DeterminingPair {
  std::shared_ptr<const StarDomain> domain;
  BinaryRelation relation;
  std::vector<char> kernel;
};

struct ConditionVerdict {
  bool pass = true;
  std::string detail;
};

struct DeterminingPairReport {
  ConditionVerdict shape_symmetric;
  ConditionVerdict shape_transitive;
  // Indexed in definition order:
  //   0: every base element and selector lies in the relation's domain
  //   1: no selector lies in the kernel
  //   2: acting on the selector classes lands in the actor's class
  //   3: acting on each reachable word-state class tuple lands in the class
  //      of the word's action on the actor
  //   4: the relation restricted to the relation-image of the base is
  //      v-regular under the star action
  //   5: a nonempty kernel is a single class whose base part is a left ideal
  std::array<ConditionVerdict, 6> conditions;

  bool pass() const;
  // Name of the first failing check, empty when all pass.
  std::string first_failure() const;
};

DeterminingPairReport verify_determining_pair(const DeterminingPair& pair);

// Classes of the pair's relation that meet the embedded base or a selector
// and differ from the kernel, ordered by ascending minimal member.
struct ClassIndexing {
  std::vector<std::vector<Elem>> classes;  // each sorted ascending
  std::vector<std::size_t> class_of;       // star index -> class or kNpos
};

ClassIndexing index_classes(const DeterminingPair& pair);

// The class-indexed representation induced by a determining pair, together
// with its class indexing and the admissible tuple set (flat indices over
// the class carrier, sorted).
struct SimplestRep {
  Representation rep;
  ClassIndexing classes;
  std::vector<std::size_t> admissible;
};

// Requires verify_determining_pair to pass (MathError naming the first
// failing condition otherwise).  The result's images are verified as a
// representation and the domain characterization of each image is asserted.
SimplestRep simplest_rep(const DeterminingPair& pair);

// One per-tuple piece of a decomposition: the pair built from value
// agreement at the tuple, its simplest representation, and that
// representation relabeled onto the original carrier (classes replaced by
// their common values at the tuple).
struct DecompositionPiece {
  std::vector<Elem> tuple;
  DeterminingPair pair;
  SimplestRep simple;
  Representation on_carrier;
};

struct Decomposition {
  Representation completed;  // the one-point completion used throughout
  FunctionSet universe;      // closure of the completed images + projectors
  std::vector<Elem> base_index;  // element -> universe index
  std::vector<DecompositionPiece> pieces;
  Representation union_rep;  // union of the relabeled pieces
  bool union_matches = false;  // union reproduces the input bit-exactly
  std::string union_detail;    // empty when union_matches
};

// Decomposes a verified representation into per-tuple simplest
// representations whose union reproduces it.
Decomposition decompose_rep(const AlgebraTable& alg, const Representation& rep,
                            std::size_t cap = kDefaultCap);

struct InclusionCriterionReport {
  bool by_words = false;   // the finite word criterion
  bool by_images = false;  // direct inclusion of simplest-rep images
  std::optional<RelationFailure> witness;  // first word-criterion failure
};

// Decides whether the first element's simplest-rep image is included in the
// second's, both by the finite word criterion (base tuples, the selector
// tuple, and reachable word actions) and by direct image comparison.  The
// two verdicts are asserted equal (MathError otherwise).  A precomputed
// simplest representation of the same pair may be supplied to avoid
// rebuilding it.
InclusionCriterionReport pair_inclusion_criterion(
    const DeterminingPair& pair, Elem g1, Elem g2,
    const SimplestRep* precomputed = nullptr);

struct OrderCompatibilityReport {
  bool pass = false;
  // witness layout: (g, g1, g2, v2, v1) -- (g1,g2) ordered, v2/v1 the images
  // of g2/g1 under one polynomial, (g,v2) ordered but (g,v1) not.
  std::optional<RelationFailure> failure;
};

// The translation-compatibility condition an order must satisfy to be an
// inclusion order: whenever g1 precedes g2, some polynomial image of g1 is
// above g, and (g, t(g2)) holds, then (g, t(g1)) holds as well.
OrderCompatibilityReport order_polynomial_compatible(const AlgebraTable& alg,
                                                     const BinaryRelation& zeta);

// Inclusion order of a set of function tables (restriction relation).
QuasiOrder inclusion_order(const FunctionSet& fs);

struct OrderedAlgebra {
  AlgebraTable alg;
  BinaryRelation order;
};

struct OrderedRepResult {
  Representation rep;              // sum over all base elements
  std::vector<SimplestRep> pieces; // per base element, ascending
  QuasiOrder induced;              // inclusion preorder of rep
};

// Builds a faithful representation whose inclusion preorder equals the
// given order.  Preconditions (each failure reported by name):
// representability conditions; the order reflexive and transitive (input
// shape), antisymmetric, stable, and translation-compatible.  The result is
// asserted faithful with induced order equal to the input.
OrderedRepResult represent_ordered(const OrderedAlgebra& oalg);

}  // namespace menger
