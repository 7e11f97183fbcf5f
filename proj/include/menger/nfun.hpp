#pragma once

// Partial n-place functions over a finite carrier, stored as flat row-major
// tables, plus the operations that combine them: superposition, the n
// slotwise (Mann) compositions, projectors, domain restriction, inclusion,
// and one-point completion.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "menger/core.hpp"

namespace menger {

// Entry value marking "undefined at this tuple".
inline constexpr std::int32_t kUndef = -1;

// A partial function A^n -> A over a carrier A = {0, ..., carrier-1}.
// entries has carrier^arity slots in row-major tuple order; kUndef marks
// tuples outside the domain.
struct PartialFunctionTable {
  std::uint32_t carrier = 0;
  std::uint32_t arity = 0;
  std::vector<std::int32_t> entries;

  PartialFunctionTable() = default;
  PartialFunctionTable(std::uint32_t carrier_size, std::uint32_t n,
                       std::vector<std::int32_t> values);

  // Nowhere-defined function.
  static PartialFunctionTable empty(std::uint32_t carrier_size,
                                    std::uint32_t n);
  // The i-th projector (0-based slot): (a_0, ..., a_{n-1}) -> a_slot.
  static PartialFunctionTable projector(std::uint32_t carrier_size,
                                        std::uint32_t n, std::uint32_t slot);

  std::size_t table_size() const { return entries.size(); }
  bool defined_at(std::size_t flat) const { return entries[flat] != kUndef; }
  std::int32_t at(std::size_t flat) const { return entries[flat]; }

  bool is_full() const;
  std::size_t domain_size() const;

  bool operator==(const PartialFunctionTable& other) const = default;
};

struct PartialFunctionTableHash {
  std::size_t operator()(const PartialFunctionTable& f) const;
};

// Superposition: h(a) = f(g_0(a), ..., g_{n-1}(a)), defined exactly where
// every g_k is defined and f is defined at the resulting value tuple.
// f and all g_k must share carrier and arity, and gs.size() must equal the
// arity.
PartialFunctionTable superpose(const PartialFunctionTable& f,
                               std::span<const PartialFunctionTable> gs);

// Slotwise composition: h(a) = f(a_0, ..., g(a) at position slot, ...,
// a_{n-1}), defined exactly where g is defined and f is defined at the
// substituted tuple.  slot is 0-based.
PartialFunctionTable mann_compose(const PartialFunctionTable& f,
                                  const PartialFunctionTable& g,
                                  std::uint32_t slot);

// Whether f is a restriction of g: g agrees with f on f's whole domain.
bool is_included(const PartialFunctionTable& f, const PartialFunctionTable& g);

// Restriction of f to the tuples enabled in keep (flat-indexed mask).
PartialFunctionTable restrict_to(const PartialFunctionTable& f,
                                 const std::vector<char>& keep);

// One-point completion: a full function on carrier+1 that agrees with f on
// f's domain and sends every other tuple to the new point (index carrier).
PartialFunctionTable complete_function(const PartialFunctionTable& f);

// A duplicate-free set of partial functions of uniform carrier and arity,
// with index lookup.  Insertion order is preserved; element k of any algebra
// built from the set refers to items[k].
class FunctionSet {
 public:
  FunctionSet(std::uint32_t carrier_size, std::uint32_t n);

  std::uint32_t carrier() const { return carrier_; }
  std::uint32_t arity() const { return arity_; }
  std::size_t size() const { return items_.size(); }
  const PartialFunctionTable& operator[](std::size_t k) const {
    return items_[k];
  }
  const std::vector<PartialFunctionTable>& items() const { return items_; }

  // Appends f if absent; returns its index either way.
  std::size_t insert(const PartialFunctionTable& f);
  std::optional<std::size_t> find(const PartialFunctionTable& f) const;
  bool contains(const PartialFunctionTable& f) const {
    return find(f).has_value();
  }

 private:
  std::uint32_t carrier_, arity_;
  std::vector<PartialFunctionTable> items_;
  std::unordered_map<PartialFunctionTable, std::size_t,
                     PartialFunctionTableHash>
      index_;
};

// Closes fs under superposition and all slotwise compositions.  New elements
// are appended in deterministic discovery order (outer function index, then
// argument indices in row-major order, compositions after superpositions per
// round).  If level_ends is given, it receives the size of the set after each
// closure round, ending with the fixed point.  Throws CapError if the closure
// would exceed cap elements.
FunctionSet close_under_operations(const FunctionSet& fs, std::size_t cap,
                                   std::vector<std::size_t>* level_ends = nullptr);

}  // namespace menger
