#include "menger/represent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace menger {

namespace {

std::string tuple_text(std::span<const Elem> args) {
  std::vector<Elem> copy(args.begin(), args.end());
  return tuple_to_string(copy);
}

// Re-embeds a table into a larger carrier; tuples touching new points stay
// undefined.
PartialFunctionTable pad_carrier(const PartialFunctionTable& f,
                                 std::uint32_t carrier) {
  if (carrier == f.carrier) return f;
  if (carrier < f.carrier) {
    throw InternalError("pad_carrier: target carrier smaller than source");
  }
  PartialFunctionTable out = PartialFunctionTable::empty(carrier, f.arity);
  TupleIndexer small(f.carrier, f.arity);
  TupleIndexer big(carrier, f.arity);
  std::vector<Elem> tuple(f.arity, 0);
  std::size_t flat = 0;
  bool more = small.tuple_count() > 0;
  while (more) {
    out.entries[big.index(tuple)] = f.entries[flat];
    ++flat;
    more = small.advance(tuple);
  }
  return out;
}

void require_same_source(std::span<const Representation> reps) {
  for (std::size_t k = 1; k < reps.size(); ++k) {
    const AlgebraTable& a = reps[0].source;
    const AlgebraTable& b = reps[k].source;
    if (a.g_size != b.g_size || a.n != b.n || a.super != b.super ||
        a.binops != b.binops) {
      throw InputError("representations do not share a source algebra");
    }
  }
}

}  // namespace

bool RepVerifyReport::pass() const {
  if (!super_ok) return false;
  for (char ok : mann_ok) {
    if (!ok) return false;
  }
  return true;
}

RepVerifyReport verify_representation(const Representation& rep) {
  const AlgebraTable& alg = rep.source;
  if (rep.images.size() != alg.g_size) {
    throw InputError("representation image count differs from algebra size");
  }
  for (const PartialFunctionTable& f : rep.images) {
    if (f.carrier != rep.carrier || f.arity != alg.n) {
      throw InputError("representation image has mismatched carrier or arity");
    }
  }
  RepVerifyReport report;
  report.super_ok = true;
  report.mann_ok.assign(alg.n, 1);
  report.mann_failure.assign(alg.n, std::nullopt);

  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  TupleIndexer args(g, n);
  std::vector<Elem> ys(n, 0);
  std::vector<PartialFunctionTable> picked;
  picked.reserve(n);
  for (Elem x = 0; x < g && report.super_ok; ++x) {
    ys.assign(n, 0);
    bool more = true;
    while (more) {
      picked.clear();
      for (Elem y : ys) picked.push_back(rep.images[y]);
      std::vector<Elem> call(n + 1);
      call[0] = x;
      std::copy(ys.begin(), ys.end(), call.begin() + 1);
      PartialFunctionTable lhs = superpose(rep.images[x], picked);
      if (!(lhs == rep.images[alg.sup(call)])) {
        report.super_ok = false;
        report.super_failure = IdentityFailure{call};
        break;
      }
      more = args.advance(ys);
    }
  }

  for (std::uint32_t slot = 0; slot < n; ++slot) {
    bool done = false;
    for (Elem x = 0; x < g && !done; ++x) {
      for (Elem y = 0; y < g; ++y) {
        PartialFunctionTable lhs = mann_compose(rep.images[x], rep.images[y], slot);
        if (!(lhs == rep.images[alg.mann(slot, x, y)])) {
          report.mann_ok[slot] = 0;
          report.mann_failure[slot] = IdentityFailure{{x, y}};
          done = true;
          break;
        }
      }
    }
  }
  return report;
}

bool verify_faithful(const Representation& rep) {
  for (std::size_t a = 0; a < rep.images.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.images.size(); ++b) {
      if (rep.images[a] == rep.images[b]) return false;
    }
  }
  return true;
}

Representation represent_unitary(const AlgebraTable& alg) {
  std::optional<SelectorSet> sel = find_selectors(alg);
  if (!sel) {
    throw MathError("translation representation requires selectors");
  }
  Representation rep;
  rep.source = alg;
  rep.carrier = alg.g_size;
  rep.kind = RepKind::kTranslation;
  TupleIndexer args(alg.g_size, alg.n);
  for (Elem x = 0; x < alg.g_size; ++x) {
    PartialFunctionTable table = PartialFunctionTable::empty(alg.g_size, alg.n);
    std::vector<Elem> call(alg.n + 1);
    call[0] = x;
    std::vector<Elem> tuple(alg.n, 0);
    std::size_t flat = 0;
    bool more = true;
    while (more) {
      std::copy(tuple.begin(), tuple.end(), call.begin() + 1);
      table.entries[flat] = static_cast<std::int32_t>(alg.sup(call));
      ++flat;
      more = args.advance(tuple);
    }
    rep.images.push_back(std::move(table));
  }
  for (std::uint32_t slot = 0; slot < alg.n; ++slot) {
    if (!(rep.images[sel->elems[slot]] ==
          PartialFunctionTable::projector(alg.g_size, alg.n, slot))) {
      throw InternalError(
          "selector image is not the matching projector in the translation "
          "representation");
    }
  }
  RepVerifyReport check = verify_representation(rep);
  if (!check.pass()) {
    throw MathError(
        "translation representation failed verification; the input does not "
        "satisfy the algebra laws");
  }
  rep.verified = true;
  return rep;
}

Representation represent_general(const AlgebraTable& alg) {
  RepresentabilityReport conditions = check_representability(alg);
  if (!conditions.pass()) {
    throw MathError("star representation requires the representability "
                    "conditions; at least one fails");
  }
  WordStateSpace space = reachable_word_states(alg);
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  const std::uint32_t carrier = g + n;

  Representation rep;
  rep.source = alg;
  rep.carrier = carrier;
  rep.kind = RepKind::kStar;
  TupleIndexer star(carrier, n);
  std::vector<Elem> tuple(n, 0);
  std::vector<PartialFunctionTable> tables(
      g, PartialFunctionTable::empty(carrier, n));
  bool more = star.tuple_count() > 0;
  std::size_t flat = 0;
  std::vector<Elem> call(n + 1);
  while (more) {
    bool all_base = true;
    for (Elem v : tuple) {
      if (v >= g) {
        all_base = false;
        break;
      }
    }
    if (all_base) {
      for (Elem x = 0; x < g; ++x) {
        call[0] = x;
        std::copy(tuple.begin(), tuple.end(), call.begin() + 1);
        tables[x].entries[flat] = static_cast<std::int32_t>(alg.sup(call));
      }
    } else {
      std::optional<std::size_t> node = space.find_state(tuple);
      if (node) {
        const std::vector<Elem>& action = space.nodes[*node].action;
        for (Elem x = 0; x < g; ++x) {
          tables[x].entries[flat] = static_cast<std::int32_t>(action[x]);
        }
      }
    }
    ++flat;
    more = star.advance(tuple);
  }
  rep.images = std::move(tables);
  RepVerifyReport check = verify_representation(rep);
  if (!check.pass()) {
    throw MathError("star representation failed verification");
  }
  if (!verify_faithful(rep)) {
    throw MathError("star representation is not faithful");
  }
  rep.verified = true;
  return rep;
}

Representation complete_representation(const Representation& rep) {
  Representation out;
  out.source = rep.source;
  out.carrier = rep.carrier + 1;
  out.kind = RepKind::kCompleted;
  out.images.reserve(rep.images.size());
  for (const PartialFunctionTable& f : rep.images) {
    out.images.push_back(complete_function(f));
  }
  RepVerifyReport check = verify_representation(out);
  if (!check.pass()) {
    throw MathError("one-point completion failed verification; the input was "
                    "not a representation");
  }
  out.verified = true;
  return out;
}

ExtensionLevels unitary_extension(const FunctionSet& fs, std::size_t cap) {
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!fs[k].is_full()) {
      throw InputError("unitary extension requires full functions");
    }
  }
  FunctionSet seed = fs;
  std::vector<std::size_t> projector_index;
  bool seed_had_projector = false;
  projector_index.reserve(fs.arity());
  for (std::uint32_t slot = 0; slot < fs.arity(); ++slot) {
    PartialFunctionTable proj =
        PartialFunctionTable::projector(fs.carrier(), fs.arity(), slot);
    if (fs.contains(proj)) seed_had_projector = true;
    projector_index.push_back(seed.insert(proj));
  }
  std::vector<std::size_t> level_ends;
  ExtensionLevels out{close_under_operations(seed, cap, &level_ends),
                      std::move(level_ends), 0, std::move(projector_index),
                      seed_had_projector};
  if (out.level_ends.empty()) {
    throw InternalError("closure produced no levels");
  }
  out.fixed_level = out.level_ends.size() - 1;
  for (std::size_t k = 0; k < out.closure.size(); ++k) {
    if (!out.closure[k].is_full()) {
      throw InternalError("unitary extension produced a non-full function");
    }
  }
  return out;
}

Representation union_reps(std::span<const Representation> reps) {
  if (reps.empty()) throw InputError("union of zero representations");
  require_same_source(reps);
  std::uint32_t carrier = 0;
  for (const Representation& r : reps) carrier = std::max(carrier, r.carrier);
  const AlgebraTable& alg = reps[0].source;

  Representation out;
  out.source = alg;
  out.carrier = carrier;
  out.kind = RepKind::kUnion;
  TupleIndexer ix(carrier, alg.n);
  for (Elem x = 0; x < alg.g_size; ++x) {
    PartialFunctionTable merged = PartialFunctionTable::empty(carrier, alg.n);
    for (const Representation& r : reps) {
      PartialFunctionTable part = pad_carrier(r.images[x], carrier);
      for (std::size_t flat = 0; flat < part.entries.size(); ++flat) {
        if (part.entries[flat] == kUndef) continue;
        if (merged.entries[flat] != kUndef &&
            merged.entries[flat] != part.entries[flat]) {
          std::ostringstream msg;
          msg << "union conflict for element " << x << " at tuple "
              << tuple_text(ix.decode(flat));
          throw ConflictError(msg.str());
        }
        merged.entries[flat] = part.entries[flat];
      }
    }
    out.images.push_back(std::move(merged));
  }
  out.verified = verify_representation(out).pass();
  return out;
}

Representation sum_reps(std::span<const Representation> reps) {
  if (reps.empty()) throw InputError("sum of zero representations");
  require_same_source(reps);
  const AlgebraTable& alg = reps[0].source;
  std::vector<std::uint32_t> offset;
  std::uint32_t carrier = 0;
  for (const Representation& r : reps) {
    offset.push_back(carrier);
    carrier += r.carrier;
  }

  Representation out;
  out.source = alg;
  out.carrier = carrier;
  out.kind = RepKind::kSum;
  out.block_offset = offset;
  TupleIndexer big(carrier, alg.n);
  for (Elem x = 0; x < alg.g_size; ++x) {
    PartialFunctionTable merged = PartialFunctionTable::empty(carrier, alg.n);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const PartialFunctionTable& part = reps[k].images[x];
      TupleIndexer small(part.carrier, alg.n);
      std::vector<Elem> tuple(alg.n, 0);
      std::vector<Elem> shifted(alg.n, 0);
      std::size_t flat = 0;
      bool more = small.tuple_count() > 0;
      while (more) {
        if (part.entries[flat] != kUndef) {
          for (std::uint32_t i = 0; i < alg.n; ++i) {
            shifted[i] = tuple[i] + offset[k];
          }
          merged.entries[big.index(shifted)] =
              part.entries[flat] + static_cast<std::int32_t>(offset[k]);
        }
        ++flat;
        more = small.advance(tuple);
      }
    }
    out.images.push_back(std::move(merged));
  }
  RepVerifyReport check = verify_representation(out);
  if (!check.pass()) {
    throw MathError("sum of representations failed verification; an input "
                    "was not a representation");
  }
  out.verified = true;
  return out;
}

QuasiOrder inclusion_preorder(const Representation& rep) {
  const std::uint32_t g = rep.source.g_size;
  QuasiOrder out{BinaryRelation(g), false, false, false};
  for (Elem a = 0; a < g; ++a) {
    for (Elem b = 0; b < g; ++b) {
      if (is_included(rep.images[a], rep.images[b])) out.rel.set(a, b);
    }
  }
  out.reflexive = out.rel.is_reflexive();
  out.transitive = out.rel.is_transitive();
  out.antisymmetric = out.rel.is_antisymmetric();
  if (!out.reflexive || !out.transitive) {
    throw InternalError("inclusion failed to be a preorder");
  }
  return out;
}

namespace {

class AbstractStarDomain final : public StarDomain {
 public:
  explicit AbstractStarDomain(const AlgebraTable& alg)
      : alg_(alg), space_(reachable_word_states(alg)) {}

  const AlgebraTable& base() const override { return alg_; }
  std::uint32_t size() const override { return alg_.g_size + alg_.n; }
  Elem embed(Elem g) const override {
    if (g >= alg_.g_size) throw InternalError("embed out of range");
    return g;
  }
  Elem selector(std::uint32_t slot) const override {
    if (slot >= alg_.n) throw InternalError("selector slot out of range");
    return alg_.g_size + slot;
  }
  std::optional<Elem> act(Elem g, std::span<const Elem> args) const override {
    if (g >= alg_.g_size || args.size() != alg_.n) {
      throw InternalError("star action argument out of range");
    }
    bool all_base = true;
    for (Elem v : args) {
      if (v >= size()) throw InternalError("star index out of range");
      if (v >= alg_.g_size) all_base = false;
    }
    if (all_base) {
      std::vector<Elem> call(alg_.n + 1);
      call[0] = g;
      std::copy(args.begin(), args.end(), call.begin() + 1);
      return alg_.sup(call);
    }
    SlotState key(args.begin(), args.end());
    std::optional<std::size_t> node = space_.find_state(key);
    if (node) return space_.nodes[*node].action[g];
    return std::nullopt;
  }
  std::string describe() const override {
    std::ostringstream out;
    out << "star domain over " << alg_.g_size << " elements and " << alg_.n
        << " selectors";
    return out.str();
  }

 private:
  AlgebraTable alg_;
  WordStateSpace space_;
};

class FunctionStarDomain final : public StarDomain {
 public:
  FunctionStarDomain(const AlgebraTable& alg, FunctionSet universe,
                     std::vector<Elem> base_index)
      : alg_(alg),
        universe_(std::move(universe)),
        base_index_(std::move(base_index)) {
    if (base_index_.size() != alg_.g_size) {
      throw InputError("base index size differs from algebra size");
    }
    for (Elem idx : base_index_) {
      if (idx >= universe_.size()) {
        throw InputError("base index outside the universe");
      }
    }
    if (universe_.arity() != alg_.n) {
      throw InputError("universe arity differs from algebra arity");
    }
    for (std::uint32_t slot = 0; slot < alg_.n; ++slot) {
      std::optional<std::size_t> idx = universe_.find(
          PartialFunctionTable::projector(universe_.carrier(), alg_.n, slot));
      if (!idx) {
        throw InputError("universe lacks a projector");
      }
      selector_.push_back(static_cast<Elem>(*idx));
    }
  }

  const AlgebraTable& base() const override { return alg_; }
  std::uint32_t size() const override {
    return static_cast<std::uint32_t>(universe_.size());
  }
  Elem embed(Elem g) const override {
    if (g >= alg_.g_size) throw InternalError("embed out of range");
    return base_index_[g];
  }
  Elem selector(std::uint32_t slot) const override {
    if (slot >= alg_.n) throw InternalError("selector slot out of range");
    return selector_[slot];
  }
  std::optional<Elem> act(Elem g, std::span<const Elem> args) const override {
    if (g >= alg_.g_size || args.size() != alg_.n) {
      throw InternalError("star action argument out of range");
    }
    std::vector<PartialFunctionTable> picked;
    picked.reserve(args.size());
    for (Elem v : args) {
      if (v >= universe_.size()) {
        throw InternalError("star index out of range");
      }
      picked.push_back(universe_[v]);
    }
    PartialFunctionTable result =
        superpose(universe_[base_index_[g]], picked);
    std::optional<std::size_t> idx = universe_.find(result);
    if (!idx) {
      throw InternalError("universe is not closed under the star action");
    }
    return static_cast<Elem>(*idx);
  }
  std::string describe() const override {
    std::ostringstream out;
    out << "function star domain over a universe of " << universe_.size()
        << " tables on carrier " << universe_.carrier();
    return out.str();
  }

 private:
  AlgebraTable alg_;
  FunctionSet universe_;
  std::vector<Elem> base_index_;
  std::vector<Elem> selector_;
};

}  // namespace

std::shared_ptr<const StarDomain> make_abstract_star(const AlgebraTable& alg) {
  RepresentabilityReport conditions = check_representability(alg);
  if (!conditions.pass()) {
    throw MathError("star domain requires the representability conditions");
  }
  return std::make_shared<AbstractStarDomain>(alg);
}

std::shared_ptr<const StarDomain> make_function_star(
    const AlgebraTable& alg, FunctionSet universe,
    std::vector<Elem> base_index) {
  return std::make_shared<FunctionStarDomain>(alg, std::move(universe),
                                              std::move(base_index));
}

}  // namespace menger
