#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately avoid the library's TupleIndexer and evaluate tables
// pointwise with their own index arithmetic, so a shared indexing bug
// cannot hide in both sides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "menger/core.hpp"
#include "menger/nfun.hpp"

namespace oracles {

using menger::Elem;
using menger::PartialFunctionTable;

// Row-major flat index computed by left-to-right accumulation.
inline std::size_t flat_index(std::uint32_t carrier,
                              const std::vector<Elem>& tuple) {
  std::size_t idx = 0;
  for (Elem a : tuple) idx = idx * carrier + a;
  return idx;
}

inline std::optional<Elem> value_at(const PartialFunctionTable& f,
                                    const std::vector<Elem>& tuple) {
  std::int32_t raw = f.entries[flat_index(f.carrier, tuple)];
  if (raw == menger::kUndef) return std::nullopt;
  return static_cast<Elem>(raw);
}

// Enumerates all argument tuples of the given arity in row-major order.
inline std::vector<std::vector<Elem>> all_tuples(std::uint32_t carrier,
                                                 std::uint32_t arity) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> tuple(arity, 0);
  while (true) {
    out.push_back(tuple);
    std::uint32_t k = arity;
    while (k > 0) {
      --k;
      if (++tuple[k] < carrier) break;
      tuple[k] = 0;
      if (k == 0) return out;
    }
  }
}

// Superposition evaluated pointwise: defined where every inner function and
// the outer function are defined.
inline PartialFunctionTable oracle_superpose(
    const PartialFunctionTable& f, const std::vector<PartialFunctionTable>& gs) {
  PartialFunctionTable out = PartialFunctionTable::empty(f.carrier, f.arity);
  for (const std::vector<Elem>& tuple : all_tuples(f.carrier, f.arity)) {
    std::vector<Elem> inner;
    bool ok = true;
    for (const PartialFunctionTable& g : gs) {
      std::optional<Elem> v = value_at(g, tuple);
      if (!v) { ok = false; break; }
      inner.push_back(*v);
    }
    if (!ok) continue;
    std::optional<Elem> v = value_at(f, inner);
    if (v) out.entries[flat_index(f.carrier, tuple)] = *v;
  }
  return out;
}

// Slotwise composition evaluated pointwise.
inline PartialFunctionTable oracle_mann(const PartialFunctionTable& f,
                                        const PartialFunctionTable& g,
                                        std::uint32_t slot) {
  PartialFunctionTable out = PartialFunctionTable::empty(f.carrier, f.arity);
  for (const std::vector<Elem>& tuple : all_tuples(f.carrier, f.arity)) {
    std::optional<Elem> v = value_at(g, tuple);
    if (!v) continue;
    std::vector<Elem> changed = tuple;
    changed[slot] = *v;
    std::optional<Elem> w = value_at(f, changed);
    if (w) out.entries[flat_index(f.carrier, tuple)] = *w;
  }
  return out;
}

// Builds a table from a string: digit characters are values, '-' is
// undefined, entries in row-major order.
inline PartialFunctionTable table(std::uint32_t carrier, std::uint32_t arity,
                                  const std::string& cells) {
  PartialFunctionTable out = PartialFunctionTable::empty(carrier, arity);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != '-') out.entries[i] = static_cast<Elem>(cells[i] - '0');
  }
  return out;
}

inline std::string cells(const PartialFunctionTable& f) {
  std::string out;
  for (std::int32_t raw : f.entries) {
    out += raw == menger::kUndef ? '-' : static_cast<char>('0' + raw);
  }
  return out;
}

// Every partial table of the given shape, in ascending entry order with the
// undefined marker sorting first.
inline std::vector<PartialFunctionTable> all_partial_tables(
    std::uint32_t carrier, std::uint32_t arity) {
  std::vector<PartialFunctionTable> out;
  std::size_t cells_count = 1;
  for (std::uint32_t k = 0; k < arity; ++k) cells_count *= carrier;
  std::vector<std::uint32_t> digits(cells_count, 0);
  std::uint32_t radix = carrier + 1;
  while (true) {
    PartialFunctionTable t = PartialFunctionTable::empty(carrier, arity);
    for (std::size_t c = 0; c < cells_count; ++c) {
      if (digits[c] > 0) t.entries[c] = static_cast<Elem>(digits[c] - 1);
    }
    out.push_back(t);
    std::size_t k = cells_count;
    while (k > 0) {
      --k;
      if (++digits[k] < radix) break;
      digits[k] = 0;
      if (k == 0) return out;
    }
  }
}

}  // namespace oracles
