#include "menger/algebra.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <unordered_map>

namespace menger {

AlgebraTable::AlgebraTable(std::uint32_t size, std::uint32_t arity,
                           std::vector<Elem> super_table,
                           std::vector<std::vector<Elem>> binop_tables)
    : g_size(size), n(arity), super(std::move(super_table)),
      binops(std::move(binop_tables)) {
  if (g_size == 0) throw InputError("algebra must have at least one element");
  if (n == 0) throw InputError("arity must be positive");
  TupleIndexer ix(g_size, n + 1);
  if (super.size() != ix.tuple_count())
    throw InputError("superposition table has wrong length");
  if (binops.size() != n)
    throw InputError("need exactly one composition table per slot");
  for (const auto& b : binops)
    if (b.size() != static_cast<std::size_t>(g_size) * g_size)
      throw InputError("composition table has wrong length");
  auto in_range = [this](Elem v) { return v < g_size; };
  if (!std::all_of(super.begin(), super.end(), in_range))
    throw InputError("superposition entry out of range");
  for (const auto& b : binops)
    if (!std::all_of(b.begin(), b.end(), in_range))
      throw InputError("composition entry out of range");
}

Elem AlgebraTable::sup(std::span<const Elem> xs) const {
  std::size_t idx = 0;
  for (Elem v : xs) idx = idx * g_size + v;
  return super[idx];
}

bool AxiomsReport::pass() const {
  if (!superassociative) return false;
  return std::all_of(associative.begin(), associative.end(),
                     [](char c) { return c != 0; });
}

namespace {

// First associativity violation of one composition table in row-major
// (x, y, z) order.
std::optional<IdentityFailure> assoc_first_failure(const AlgebraTable& alg,
                                                   std::uint32_t slot) {
  const std::size_t g = alg.g_size;
  const std::vector<Elem>& b = alg.binops[slot];
  for (Elem x = 0; x < g; ++x)
    for (Elem y = 0; y < g; ++y) {
      Elem xy = b[x * g + y];
      for (Elem z = 0; z < g; ++z) {
        if (b[xy * g + z] != b[x * g + b[y * g + z]])
          return IdentityFailure{{x, y, z}};
      }
    }
  return std::nullopt;
}

bool assoc_holds_parallel(const AlgebraTable& alg, std::uint32_t slot) {
  const std::int64_t g = alg.g_size;
  const Elem* b = alg.binops[slot].data();
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::int64_t x = 0; x < g; ++x) {
    bool mine = true;
    for (std::int64_t y = 0; y < g && mine; ++y) {
      Elem xy = b[x * g + y];
      for (std::int64_t z = 0; z < g; ++z) {
        if (b[xy * g + z] != b[x * g + b[y * g + z]]) {
          mine = false;
          break;
        }
      }
    }
    ok = ok && mine;
  }
  return ok;
}

// First superassociativity violation in row-major (x, y_1..y_n, z_1..z_n)
// order, by direct evaluation.
std::optional<IdentityFailure> superassoc_first_failure(
    const AlgebraTable& alg) {
  const std::uint32_t g = alg.g_size, n = alg.n;
  TupleIndexer ix(g, n);
  std::vector<Elem> ys(n, 0), zs(n, 0), inner(n);
  for (Elem x = 0; x < g; ++x) {
    std::fill(ys.begin(), ys.end(), 0);
    do {
      std::size_t ybase = x;
      for (Elem y : ys) ybase = ybase * g + y;
      Elem w = alg.super[ybase];
      std::fill(zs.begin(), zs.end(), 0);
      do {
        std::size_t zoff = 0;
        for (Elem z : zs) zoff = zoff * g + z;
        std::size_t lhs_idx = w;
        for (Elem z : zs) lhs_idx = lhs_idx * g + z;
        Elem lhs = alg.super[lhs_idx];
        std::size_t ridx = x;
        for (std::uint32_t k = 0; k < n; ++k) {
          std::size_t yk = ys[k];
          ridx = ridx * g + alg.super[yk * ix.tuple_count() + zoff];
        }
        if (lhs != alg.super[ridx]) {
          IdentityFailure f;
          f.args.push_back(x);
          f.args.insert(f.args.end(), ys.begin(), ys.end());
          f.args.insert(f.args.end(), zs.begin(), zs.end());
          return f;
        }
      } while (ix.advance(zs));
    } while (ix.advance(ys));
  }
  return std::nullopt;
}

// Arity-2 superassociativity kernel for g <= 256: for every map
// col(y) = [y, z_1, z_2] (deduplicated across (z_1, z_2)), the identity says
// col composed with the section S_x equals S_x applied to col-twisted
// arguments.  Both sides are materialized as g^3 byte tables and compared
// row-wise, parallelized over the distinct maps.
bool superassoc2_holds(const AlgebraTable& alg) {
  const std::size_t g = alg.g_size;
  const std::size_t g2 = g * g, g3 = g2 * g;
  std::vector<std::uint8_t> s8(g3);
  for (std::size_t i = 0; i < g3; ++i)
    s8[i] = static_cast<std::uint8_t>(alg.super[i]);
  // Deduplicate the maps y -> [y, z1, z2].
  std::vector<std::uint8_t> cols;
  {
    std::map<std::vector<std::uint8_t>, bool> seen;
    std::vector<std::uint8_t> col(g);
    for (std::size_t zoff = 0; zoff < g2; ++zoff) {
      for (std::size_t y = 0; y < g; ++y) col[y] = s8[y * g2 + zoff];
      if (seen.emplace(col, true).second)
        cols.insert(cols.end(), col.begin(), col.end());
    }
  }
  const std::int64_t ncols = static_cast<std::int64_t>(cols.size() / g);
  bool ok = true;
#pragma omp parallel
  {
    std::vector<std::uint8_t> lhs(g3), rhs(g3);
#pragma omp for schedule(dynamic)
    for (std::int64_t ci = 0; ci < ncols; ++ci) {
      if (!ok) continue;
      const std::uint8_t* col = cols.data() + ci * g;
      for (std::size_t i = 0; i < g3; ++i) lhs[i] = col[s8[i]];
      for (std::size_t r = 0; r < g2; ++r) {
        const std::uint8_t* row = s8.data() + r * g;
        std::uint8_t* out = rhs.data() + r * g;
        for (std::size_t y2 = 0; y2 < g; ++y2) out[y2] = row[col[y2]];
      }
      bool mine = true;
      for (std::size_t x = 0; x < g && mine; ++x)
        for (std::size_t y1 = 0; y1 < g; ++y1) {
          const std::uint8_t* a = lhs.data() + (x * g + y1) * g;
          const std::uint8_t* b = rhs.data() + (x * g + col[y1]) * g;
          if (std::memcmp(a, b, g) != 0) {
            mine = false;
            break;
          }
        }
      if (!mine) {
#pragma omp atomic write
        ok = false;
      }
    }
  }
  return ok;
}

// Generic-arity superassociativity sweep, parallelized over x.
bool superassoc_holds_parallel(const AlgebraTable& alg) {
  if (alg.n == 2 && alg.g_size <= 256) return superassoc2_holds(alg);
  const std::int64_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  TupleIndexer ix(alg.g_size, n);
  const std::size_t tuples = ix.tuple_count();
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (std::int64_t x = 0; x < g; ++x) {
    bool mine = true;
    std::vector<Elem> ys(n, 0), zs(n, 0);
    do {
      std::size_t ybase = static_cast<std::size_t>(x);
      for (Elem y : ys) ybase = ybase * g + y;
      Elem w = alg.super[ybase];
      std::fill(zs.begin(), zs.end(), 0);
      do {
        std::size_t zoff = 0;
        for (Elem z : zs) zoff = zoff * g + z;
        std::size_t lhs_idx = w;
        for (Elem z : zs) lhs_idx = lhs_idx * g + z;
        std::size_t ridx = static_cast<std::size_t>(x);
        for (std::uint32_t k = 0; k < n; ++k)
          ridx = ridx * g + alg.super[ys[k] * tuples + zoff];
        if (alg.super[lhs_idx] != alg.super[ridx]) {
          mine = false;
          break;
        }
      } while (ix.advance(zs));
    } while (mine && ix.advance(ys));
    ok = ok && mine;
  }
  return ok;
}

}  // namespace

AxiomsReport check_axioms(const AlgebraTable& alg) {
  AxiomsReport rep;
  rep.associative.resize(alg.n, 1);
  rep.assoc_failure.resize(alg.n);
  for (std::uint32_t slot = 0; slot < alg.n; ++slot) {
    if (!assoc_holds_parallel(alg, slot)) {
      rep.associative[slot] = 0;
      rep.assoc_failure[slot] = assoc_first_failure(alg, slot);
    }
  }
  rep.superassociative = superassoc_holds_parallel(alg);
  if (!rep.superassociative)
    rep.superassoc_failure = superassoc_first_failure(alg);
  return rep;
}

AxiomsReport check_axioms_serial(const AlgebraTable& alg) {
  AxiomsReport rep;
  rep.associative.resize(alg.n, 1);
  rep.assoc_failure.resize(alg.n);
  for (std::uint32_t slot = 0; slot < alg.n; ++slot) {
    auto fail = assoc_first_failure(alg, slot);
    if (fail) {
      rep.associative[slot] = 0;
      rep.assoc_failure[slot] = std::move(fail);
    }
  }
  auto fail = superassoc_first_failure(alg);
  rep.superassociative = !fail.has_value();
  rep.superassoc_failure = std::move(fail);
  return rep;
}

std::optional<SelectorSet> find_selectors(const AlgebraTable& alg) {
  const std::uint32_t g = alg.g_size, n = alg.n;
  TupleIndexer ix(g, n);
  std::optional<SelectorSet> found;
  std::vector<Elem> cand(n, 0);
  std::vector<Elem> args(n + 1);
  do {
    // Right identity: [x, e_0..e_{n-1}] = x for every x.
    bool ok = true;
    std::size_t coff = 0;
    for (Elem e : cand) coff = coff * g + e;
    for (Elem x = 0; x < g && ok; ++x)
      ok = alg.super[x * ix.tuple_count() + coff] == x;
    // Slot laws: [e_i, x_1..x_n] = x_i for every tuple.
    for (std::uint32_t i = 0; i < n && ok; ++i) {
      std::vector<Elem> xs(n, 0);
      do {
        std::size_t idx = cand[i];
        for (Elem v : xs) idx = idx * g + v;
        if (alg.super[idx] != xs[i]) {
          ok = false;
          break;
        }
      } while (ix.advance(xs));
    }
    // Composition laws: [x, e_0.., y at slot i, ..e_{n-1}] = x o_i y.
    for (std::uint32_t i = 0; i < n && ok; ++i) {
      for (Elem x = 0; x < g && ok; ++x)
        for (Elem y = 0; y < g; ++y) {
          args[0] = x;
          for (std::uint32_t k = 0; k < n; ++k)
            args[k + 1] = (k == i) ? y : cand[k];
          if (alg.sup(args) != alg.mann(i, x, y)) {
            ok = false;
            break;
          }
        }
    }
    if (ok) {
      if (found)
        throw InternalError("two distinct selector tuples found");
      found = SelectorSet{cand};
    }
  } while (ix.advance(cand));
  return found;
}

Elem eval_word(const AlgebraTable& alg, Elem x, const CompositionWord& word) {
  if (x >= alg.g_size) throw InputError("eval_word: element out of range");
  for (const WordLetter& l : word) {
    if (l.slot >= alg.n || l.elem >= alg.g_size)
      throw InputError("eval_word: letter out of range");
    x = alg.mann(l.slot, x, l.elem);
  }
  return x;
}

namespace {

struct FoldResult {
  SlotState state;
  std::vector<Elem> action;
};

// Runs the slot-state fold: on letter (j, y), every occupied slot composes
// with y at slot j, an empty slot j becomes y, and other empty slots stay.
FoldResult fold_word(const AlgebraTable& alg, const CompositionWord& word) {
  FoldResult r;
  r.state.resize(alg.n);
  for (std::uint32_t i = 0; i < alg.n; ++i) r.state[i] = alg.g_size + i;
  r.action.resize(alg.g_size);
  for (Elem gx = 0; gx < alg.g_size; ++gx) r.action[gx] = gx;
  for (const WordLetter& l : word) {
    if (l.slot >= alg.n || l.elem >= alg.g_size)
      throw InputError("composition word letter out of range");
    for (std::uint32_t i = 0; i < alg.n; ++i) {
      if (r.state[i] < alg.g_size)
        r.state[i] = alg.mann(l.slot, r.state[i], l.elem);
      else if (i == l.slot)
        r.state[i] = l.elem;
    }
    for (Elem& v : r.action) v = alg.mann(l.slot, v, l.elem);
  }
  return r;
}

}  // namespace

Elem slot_argument_star(const AlgebraTable& alg, const CompositionWord& word,
                        std::uint32_t slot) {
  if (slot >= alg.n) throw InputError("slot out of range");
  return fold_word(alg, word).state[slot];
}

std::optional<Elem> slot_argument(const AlgebraTable& alg,
                                  const CompositionWord& word,
                                  std::uint32_t slot) {
  Elem v = slot_argument_star(alg, word, slot);
  if (v >= alg.g_size) return std::nullopt;
  return v;
}

std::optional<std::size_t> WordStateSpace::find_state(
    const SlotState& s) const {
  auto it = std::lower_bound(
      state_index_.begin(), state_index_.end(), s,
      [](const auto& entry, const SlotState& key) { return entry.first < key; });
  if (it == state_index_.end() || it->first != s) return std::nullopt;
  return it->second;
}

WordStateSpace reachable_word_states(const AlgebraTable& alg) {
  const std::uint32_t g = alg.g_size, n = alg.n;
  WordStateSpace space;
  std::map<SlotState, std::size_t> by_state;
  std::map<std::vector<Elem>, std::size_t> by_node;  // state ++ action

  auto node_key = [n](const SlotState& s, const std::vector<Elem>& a) {
    std::vector<Elem> key = s;
    key.insert(key.end(), a.begin(), a.end());
    (void)n;
    return key;
  };

  WordStateNode root;
  root.state.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) root.state[i] = g + i;
  root.action.resize(g);
  for (Elem x = 0; x < g; ++x) root.action[x] = x;
  root.full = (n == 0);
  space.nodes.push_back(root);
  by_state.emplace(root.state, 0);
  by_node.emplace(node_key(root.state, root.action), 0);

  std::deque<std::size_t> queue{0};
  while (!queue.empty() && space.consistent) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::uint32_t j = 0; j < n && space.consistent; ++j) {
      for (Elem y = 0; y < g; ++y) {
        const WordStateNode& node = space.nodes[cur];
        WordStateNode next;
        next.state.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
          if (node.state[i] < g)
            next.state[i] = alg.mann(j, node.state[i], y);
          else
            next.state[i] = (i == j) ? y : node.state[i];
        }
        next.action.resize(g);
        for (Elem x = 0; x < g; ++x)
          next.action[x] = alg.mann(j, node.action[x], y);
        auto key = node_key(next.state, next.action);
        if (by_node.count(key)) continue;
        next.witness = node.witness;
        next.witness.push_back({j, y});
        auto st = by_state.find(next.state);
        if (st != by_state.end()) {
          // Same slot state, different action: determinacy fails.
          space.consistent = false;
          space.collision = {space.nodes[st->second].witness, next.witness};
          break;
        }
        next.full = true;
        for (Elem v : next.state) next.full = next.full && v < g;
        space.nodes.push_back(next);
        by_state.emplace(space.nodes.back().state, space.nodes.size() - 1);
        by_node.emplace(std::move(key), space.nodes.size() - 1);
        queue.push_back(space.nodes.size() - 1);
      }
    }
  }
  space.state_index_.assign(by_state.begin(), by_state.end());
  return space;
}

namespace {

// Left law, arity-2 fast path preserving (slot, x, y, z1, z2) scan order.
std::optional<IdentityFailure> left_law_failure2(const AlgebraTable& alg) {
  const std::size_t g = alg.g_size;
  const Elem* s = alg.super.data();
  for (std::uint32_t i = 0; i < 2; ++i) {
    const Elem* b = alg.binops[i].data();
    for (std::size_t x = 0; x < g; ++x)
      for (std::size_t y = 0; y < g; ++y) {
        std::size_t lbase = static_cast<std::size_t>(b[x * g + y]) * g * g;
        for (std::size_t z1 = 0; z1 < g; ++z1)
          for (std::size_t z2 = 0; z2 < g; ++z2) {
            Elem inner = s[(y * g + z1) * g + z2];
            Elem rhs = (i == 0) ? s[(x * g + inner) * g + z2]
                                : s[(x * g + z1) * g + inner];
            if (s[lbase + z1 * g + z2] != rhs)
              return IdentityFailure{{static_cast<Elem>(i),
                                      static_cast<Elem>(x),
                                      static_cast<Elem>(y),
                                      static_cast<Elem>(z1),
                                      static_cast<Elem>(z2)}};
          }
      }
  }
  return std::nullopt;
}

std::optional<IdentityFailure> left_law_failure(const AlgebraTable& alg) {
  if (alg.n == 2) return left_law_failure2(alg);
  const std::uint32_t g = alg.g_size, n = alg.n;
  TupleIndexer ix(g, n);
  std::vector<Elem> zs(n), args(n + 1);
  for (std::uint32_t i = 0; i < n; ++i)
    for (Elem x = 0; x < g; ++x)
      for (Elem y = 0; y < g; ++y) {
        std::fill(zs.begin(), zs.end(), 0);
        do {
          args[0] = alg.mann(i, x, y);
          std::copy(zs.begin(), zs.end(), args.begin() + 1);
          Elem lhs = alg.sup(args);
          args[0] = y;
          Elem inner = alg.sup(args);
          args[0] = x;
          args[i + 1] = inner;
          if (lhs != alg.sup(args)) {
            IdentityFailure f;
            f.args = {static_cast<Elem>(i), x, y};
            f.args.insert(f.args.end(), zs.begin(), zs.end());
            return f;
          }
        } while (ix.advance(zs));
      }
  return std::nullopt;
}

std::optional<IdentityFailure> right_law_failure(const AlgebraTable& alg) {
  const std::uint32_t g = alg.g_size, n = alg.n;
  TupleIndexer ix(g, n);
  std::vector<Elem> ys(n), args(n + 1);
  for (std::uint32_t i = 0; i < n; ++i)
    for (Elem x = 0; x < g; ++x) {
      std::fill(ys.begin(), ys.end(), 0);
      do {
        args[0] = x;
        std::copy(ys.begin(), ys.end(), args.begin() + 1);
        Elem bracket = alg.sup(args);
        for (Elem z = 0; z < g; ++z) {
          Elem lhs = alg.mann(i, bracket, z);
          args[0] = x;
          for (std::uint32_t k = 0; k < n; ++k)
            args[k + 1] = alg.mann(i, ys[k], z);
          if (lhs != alg.sup(args)) {
            IdentityFailure f;
            f.args = {static_cast<Elem>(i), x};
            f.args.insert(f.args.end(), ys.begin(), ys.end());
            f.args.push_back(z);
            return f;
          }
        }
      } while (ix.advance(ys));
    }
  return std::nullopt;
}

}  // namespace

RepresentabilityReport check_representability(const AlgebraTable& alg) {
  RepresentabilityReport rep;
  auto lf = left_law_failure(alg);
  rep.left_composition_law = !lf.has_value();
  rep.left_failure = std::move(lf);
  auto rf = right_law_failure(alg);
  rep.right_composition_law = !rf.has_value();
  rep.right_failure = std::move(rf);

  WordStateSpace space = reachable_word_states(alg);
  rep.slot_determinacy = space.consistent;
  if (!space.consistent) rep.determinacy_failure = space.collision;

  rep.covering_word_law = true;
  std::vector<Elem> args(alg.n + 1);
  for (const WordStateNode& node : space.nodes) {
    if (!node.full) continue;
    std::copy(node.state.begin(), node.state.end(), args.begin() + 1);
    for (Elem x = 0; x < alg.g_size; ++x) {
      args[0] = x;
      if (alg.sup(args) != node.action[x]) {
        rep.covering_word_law = false;
        rep.covering_failure_word = node.witness;
        rep.covering_failure_elem = x;
        break;
      }
    }
    if (!rep.covering_word_law) break;
  }
  return rep;
}

FunctionAlgebra algebra_from_functions(const FunctionSet& fs,
                                       std::size_t cap) {
  if (fs.size() == 0)
    throw InputError("algebra_from_functions: empty function set");
  FunctionSet closure = close_under_operations(fs, cap);
  const std::uint32_t d = static_cast<std::uint32_t>(closure.size());
  const std::uint32_t n = closure.arity();
  TupleIndexer ix(d, n + 1);
  std::vector<Elem> super(ix.tuple_count());
  std::vector<std::vector<Elem>> binops(
      n, std::vector<Elem>(static_cast<std::size_t>(d) * d));
  std::vector<PartialFunctionTable> gs;
  std::vector<Elem> pick(n + 1, 0);
  do {
    gs.clear();
    for (std::uint32_t k = 0; k < n; ++k) gs.push_back(closure[pick[k + 1]]);
    PartialFunctionTable prod = superpose(closure[pick[0]], gs);
    auto idx = closure.find(prod);
    if (!idx)
      throw InternalError("closure not closed under superposition");
    super[ix.index(pick)] = static_cast<Elem>(*idx);
  } while (ix.advance(pick));
  for (std::uint32_t slot = 0; slot < n; ++slot)
    for (Elem x = 0; x < d; ++x)
      for (Elem y = 0; y < d; ++y) {
        auto idx = closure.find(mann_compose(closure[x], closure[y], slot));
        if (!idx)
          throw InternalError("closure not closed under composition");
        binops[slot][static_cast<std::size_t>(x) * d + y] =
            static_cast<Elem>(*idx);
      }
  return FunctionAlgebra{
      AlgebraTable(d, n, std::move(super), std::move(binops)),
      std::move(closure)};
}

}  // namespace menger
