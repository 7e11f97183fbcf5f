#include "menger/nfun.hpp"

#include <algorithm>

namespace menger {

namespace {

void require_compatible(const PartialFunctionTable& f,
                        const PartialFunctionTable& g, const char* what) {
  if (f.carrier != g.carrier || f.arity != g.arity)
    throw InputError(std::string(what) +
                     ": operands must share carrier and arity");
}

}  // namespace

PartialFunctionTable::PartialFunctionTable(std::uint32_t carrier_size,
                                           std::uint32_t n,
                                           std::vector<std::int32_t> values)
    : carrier(carrier_size), arity(n), entries(std::move(values)) {
  TupleIndexer ix(carrier, arity);
  if (entries.size() != ix.tuple_count())
    throw InputError("function table has wrong length");
  for (std::int32_t v : entries) {
    if (v != kUndef && (v < 0 || static_cast<std::uint32_t>(v) >= carrier))
      throw InputError("function table entry out of carrier range");
  }
}

PartialFunctionTable PartialFunctionTable::empty(std::uint32_t carrier_size,
                                                 std::uint32_t n) {
  TupleIndexer ix(carrier_size, n);
  return PartialFunctionTable(
      carrier_size, n, std::vector<std::int32_t>(ix.tuple_count(), kUndef));
}

PartialFunctionTable PartialFunctionTable::projector(std::uint32_t carrier_size,
                                                     std::uint32_t n,
                                                     std::uint32_t slot) {
  if (slot >= n) throw InputError("projector slot out of range");
  TupleIndexer ix(carrier_size, n);
  std::vector<std::int32_t> vals(ix.tuple_count());
  for (std::size_t t = 0; t < vals.size(); ++t)
    vals[t] = static_cast<std::int32_t>(ix.coordinate(t, slot));
  return PartialFunctionTable(carrier_size, n, std::move(vals));
}

bool PartialFunctionTable::is_full() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](std::int32_t v) { return v == kUndef; });
}

std::size_t PartialFunctionTable::domain_size() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [](std::int32_t v) { return v != kUndef; }));
}

std::size_t PartialFunctionTableHash::operator()(
    const PartialFunctionTable& f) const {
  // FNV-1a over the entries.
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(f.carrier);
  mix(f.arity);
  for (std::int32_t v : f.entries) mix(static_cast<std::uint32_t>(v));
  return static_cast<std::size_t>(h);
}

PartialFunctionTable superpose(const PartialFunctionTable& f,
                               std::span<const PartialFunctionTable> gs) {
  if (gs.size() != f.arity)
    throw InputError("superpose: need exactly one inner function per slot");
  for (const auto& g : gs) require_compatible(f, g, "superpose");
  TupleIndexer ix(f.carrier, f.arity);
  PartialFunctionTable out = PartialFunctionTable::empty(f.carrier, f.arity);
  std::vector<Elem> image(f.arity);
  for (std::size_t t = 0; t < out.entries.size(); ++t) {
    bool ok = true;
    for (std::uint32_t k = 0; k < f.arity && ok; ++k) {
      std::int32_t v = gs[k].entries[t];
      if (v == kUndef)
        ok = false;
      else
        image[k] = static_cast<Elem>(v);
    }
    if (ok) out.entries[t] = f.entries[ix.index(image)];
  }
  return out;
}

PartialFunctionTable mann_compose(const PartialFunctionTable& f,
                                  const PartialFunctionTable& g,
                                  std::uint32_t slot) {
  require_compatible(f, g, "mann_compose");
  if (slot >= f.arity) throw InputError("mann_compose: slot out of range");
  TupleIndexer ix(f.carrier, f.arity);
  PartialFunctionTable out = PartialFunctionTable::empty(f.carrier, f.arity);
  for (std::size_t t = 0; t < out.entries.size(); ++t) {
    std::int32_t v = g.entries[t];
    if (v == kUndef) continue;
    out.entries[t] =
        f.entries[ix.with_coordinate(t, slot, static_cast<Elem>(v))];
  }
  return out;
}

bool is_included(const PartialFunctionTable& f,
                 const PartialFunctionTable& g) {
  require_compatible(f, g, "is_included");
  for (std::size_t t = 0; t < f.entries.size(); ++t) {
    if (f.entries[t] != kUndef && g.entries[t] != f.entries[t]) return false;
  }
  return true;
}

PartialFunctionTable restrict_to(const PartialFunctionTable& f,
                                 const std::vector<char>& keep) {
  if (keep.size() != f.entries.size())
    throw InputError("restrict_to: mask length must match table length");
  PartialFunctionTable out = f;
  for (std::size_t t = 0; t < out.entries.size(); ++t)
    if (!keep[t]) out.entries[t] = kUndef;
  return out;
}

PartialFunctionTable complete_function(const PartialFunctionTable& f) {
  std::uint32_t m0 = f.carrier + 1;
  std::int32_t sink = static_cast<std::int32_t>(f.carrier);
  TupleIndexer big(m0, f.arity);
  TupleIndexer small(f.carrier, f.arity);
  std::vector<std::int32_t> vals(big.tuple_count(), sink);
  std::vector<Elem> tuple(f.arity, 0);
  // Walk the old tuple space; everything else keeps the sink value.
  do {
    std::int32_t v = f.entries[small.index(tuple)];
    if (v != kUndef) vals[big.index(tuple)] = v;
  } while (small.advance(tuple));
  return PartialFunctionTable(m0, f.arity, std::move(vals));
}

FunctionSet::FunctionSet(std::uint32_t carrier_size, std::uint32_t n)
    : carrier_(carrier_size), arity_(n) {
  TupleIndexer validate(carrier_size, n);
  (void)validate;
}

std::size_t FunctionSet::insert(const PartialFunctionTable& f) {
  if (f.carrier != carrier_ || f.arity != arity_)
    throw InputError("FunctionSet: carrier/arity mismatch on insert");
  auto it = index_.find(f);
  if (it != index_.end()) return it->second;
  items_.push_back(f);
  index_.emplace(f, items_.size() - 1);
  return items_.size() - 1;
}

std::optional<std::size_t> FunctionSet::find(
    const PartialFunctionTable& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FunctionSet close_under_operations(const FunctionSet& fs, std::size_t cap,
                                   std::vector<std::size_t>* level_ends) {
  FunctionSet out = fs;
  if (out.size() == 0) {
    if (level_ends) level_ends->push_back(0);
    return out;
  }
  if (out.size() > cap) throw CapError("closure cap exceeded");
  if (level_ends) {
    level_ends->clear();
    level_ends->push_back(out.size());
  }
  std::uint32_t n = out.arity();
  TupleIndexer ix(out.carrier(), n);
  std::size_t tuples = ix.tuple_count();
  PartialFunctionTable scratch = PartialFunctionTable::empty(out.carrier(), n);
  std::vector<Elem> image(n);
  // Superposition [f, g_0..g_{n-1}] by element indices; all reads finish
  // before the result is inserted, so growth of `out` is safe.
  auto superpose_pick = [&](const std::vector<std::size_t>& pick) {
    const std::int32_t* f = out[pick[0]].entries.data();
    for (std::size_t t = 0; t < tuples; ++t) {
      bool ok = true;
      for (std::uint32_t k = 0; k < n && ok; ++k) {
        std::int32_t v = out[pick[k + 1]].entries[t];
        if (v == kUndef)
          ok = false;
        else
          image[k] = static_cast<Elem>(v);
      }
      scratch.entries[t] = ok ? f[ix.index(image)] : kUndef;
    }
    return scratch;
  };
  std::size_t old_size = 0;
  while (true) {
    std::size_t cur_size = out.size();
    if (cur_size == old_size) break;
    // Superpositions with at least one factor new this round, in row-major
    // order of (f, g_0, ..., g_{n-1}).
    std::vector<std::size_t> pick(n + 1, 0);
    while (true) {
      bool any_new = false;
      for (std::size_t v : pick) any_new = any_new || v >= old_size;
      if (any_new) {
        out.insert(superpose_pick(pick));
        if (out.size() > cap) throw CapError("closure cap exceeded");
      }
      // advance odometer over the snapshot taken at round start
      std::size_t k = n + 1;
      while (k > 0) {
        if (++pick[k - 1] < cur_size) break;
        pick[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
    // Slotwise compositions f o_slot g with at least one factor new.
    for (std::size_t f = 0; f < cur_size; ++f) {
      for (std::size_t g = 0; g < cur_size; ++g) {
        if (f < old_size && g < old_size) continue;
        for (std::uint32_t slot = 0; slot < n; ++slot) {
          out.insert(mann_compose(out[f], out[g], slot));
          if (out.size() > cap) throw CapError("closure cap exceeded");
        }
      }
    }
    old_size = cur_size;
    if (level_ends && out.size() != cur_size) level_ends->push_back(out.size());
  }
  if (level_ends && level_ends->back() != out.size())
    level_ends->push_back(out.size());
  return out;
}

}  // namespace menger
