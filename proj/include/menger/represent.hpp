#pragma once

// Representations of an abstract algebra by partial n-place functions, and
// the constructions producing them: the translation representation (when
// selectors exist), the star representation over the carrier extended by
// formal selectors, one-point completion, unitary extension levels, unions,
// sums, and the inclusion preorder induced on the source.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"

namespace menger {

enum class RepKind {
  kCustom,
  kTranslation,
  kStar,
  kCompleted,
  kSimplest,
  kSum,
  kUnion,
};

// A map from algebra elements to partial function tables over a common
// carrier; images[k] is the image of element k.
struct Representation {
  AlgebraTable source;
  std::uint32_t carrier = 0;
  std::vector<PartialFunctionTable> images;
  RepKind kind = RepKind::kCustom;
  bool verified = false;
  // For sums: where each summand's carrier block starts; empty otherwise.
  std::vector<std::uint32_t> block_offset;
};

struct RepVerifyReport {
  bool super_ok = false;
  std::optional<IdentityFailure> super_failure;  // (x, y_1..y_n)
  std::vector<char> mann_ok;
  std::vector<std::optional<IdentityFailure>> mann_failure;  // (x, y) per slot

  bool pass() const;
};

// Exhaustively checks that images turn the algebra operations into
// superposition and slotwise composition of tables.  At most one
// counterexample per equation family, first in row-major scan order.
RepVerifyReport verify_representation(const Representation& rep);

// Whether distinct elements have distinct images.
bool verify_faithful(const Representation& rep);

// Embeds an algebra with selectors into the full functions on its own
// carrier: each element maps to the table of its left translations.  The
// selector images are exactly the projectors (raises InternalError
// otherwise); verification failure raises MathError.
Representation represent_unitary(const AlgebraTable& alg);

// Star representation over carrier g_size + n: each element g maps to the
// partial table acting by superposition on base tuples, sending the selector
// tuple to g, and every reachable word-state tuple to the word's action on
// g.  Requires check_representability to pass; the result is verified and
// faithful (MathError otherwise).
Representation represent_general(const AlgebraTable& alg);

// Completes every image by a shared new point (carrier grows by one).
// Completion preserves verification and distinctness of images.
Representation complete_representation(const Representation& rep);

// Levels of the closure of a set of full functions together with all
// projectors.  level_ends[k] is the size of level k as a prefix of
// closure's items; the last level is the fixed point.
struct ExtensionLevels {
  FunctionSet closure;
  std::vector<std::size_t> level_ends;
  std::size_t fixed_level = 0;          // first k with F_{k+1} = F_k
  std::vector<std::size_t> projector_index;  // one per slot
  bool seed_had_projector = false;      // a projector was already in the input
};

// Closes fs (which must consist of full functions) together with the n
// projectors under superposition and slotwise composition, tracking levels.
ExtensionLevels unitary_extension(const FunctionSet& fs,
                                  std::size_t cap = kDefaultCap);

// Union of representations of one source over subsets of a common carrier
// (images are padded to the largest carrier).  Images disagreeing on a
// shared defined tuple raise ConflictError.  The result carries the verdict
// of verify_representation; a union need not stay a representation.
Representation union_reps(std::span<const Representation> reps);

// Disjoint (block) sum: carriers are laid out side by side and every image
// acts blockwise.  The sum of representations is verified (MathError if
// verification fails).
Representation sum_reps(std::span<const Representation> reps);

struct QuasiOrder {
  BinaryRelation rel;
  bool reflexive = false;
  bool transitive = false;
  bool antisymmetric = false;
};

// (g, h) related iff the image of g is a restriction of the image of h.
// Always reflexive and transitive; antisymmetric iff the representation is
// faithful.
QuasiOrder inclusion_preorder(const Representation& rep);

// Evaluation domain for determining pairs: the base algebra together with a
// star index set containing its elements and one selector per slot, plus the
// partial left action of base elements on star tuples.
class StarDomain {
 public:
  virtual ~StarDomain() = default;
  virtual const AlgebraTable& base() const = 0;
  virtual std::uint32_t size() const = 0;
  virtual Elem embed(Elem g) const = 0;
  virtual Elem selector(std::uint32_t slot) const = 0;
  // Action of base element g on a tuple of star indices; nullopt when the
  // action is undefined there.
  virtual std::optional<Elem> act(Elem g,
                                  std::span<const Elem> args) const = 0;
  virtual std::string describe() const = 0;
};

// Star domain on g_size + n indices evaluating through base tuples, the
// selector tuple, and reachable word states.  Requires the representability
// conditions (MathError otherwise).
std::shared_ptr<const StarDomain> make_abstract_star(const AlgebraTable& alg);

// Star domain over an explicit function universe closed under the
// operations: base element g acts as superposition by base_index[g];
// selectors are the projectors (which must be members of the universe).
std::shared_ptr<const StarDomain> make_function_star(
    const AlgebraTable& alg, FunctionSet universe,
    std::vector<Elem> base_index);

}  // namespace menger
