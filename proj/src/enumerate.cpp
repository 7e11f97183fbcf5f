#include "menger/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace menger {

namespace {

bool is_associative(const std::vector<Elem>& table, std::uint32_t g) {
  for (Elem x = 0; x < g; ++x) {
    for (Elem y = 0; y < g; ++y) {
      Elem xy = table[static_cast<std::size_t>(x) * g + y];
      for (Elem z = 0; z < g; ++z) {
        Elem yz = table[static_cast<std::size_t>(y) * g + z];
        if (table[static_cast<std::size_t>(xy) * g + z] !=
            table[static_cast<std::size_t>(x) * g + yz]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Deterministic 64-bit generator for reproducible random documents.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  Elem below(std::uint32_t bound) {
    return static_cast<Elem>(next() % bound);
  }
};

// Searches for superposition tables compatible with a fixed tuple of
// associative compositions.  Columns (the value vector of [x, tuple] over
// all x for one argument tuple) are forced by reachable word actions, then
// propagated through the two composition laws; remaining free columns are
// searched exhaustively or filled at random.
class SuperSearch {
 public:
  SuperSearch(std::uint32_t g, std::uint32_t n,
              std::vector<std::vector<Elem>> binops)
      : g_(g), n_(n), binops_(std::move(binops)), tuples_(g, n) {}

  // Seeds the forced columns; false when no representable superposition can
  // exist for these compositions.
  bool init() {
    AlgebraTable probe(g_, n_,
                       std::vector<Elem>(tuples_.tuple_count() * g_, 0),
                       binops_);
    WordStateSpace space = reachable_word_states(probe);
    if (!space.consistent) return false;
    base_.col.assign(tuples_.tuple_count(), {});
    base_.known.assign(tuples_.tuple_count(), 0);
    std::vector<std::size_t> queue;
    for (const WordStateNode& node : space.nodes) {
      if (!node.full) continue;
      std::size_t flat = tuples_.index(node.state);
      if (base_.known[flat]) {
        if (base_.col[flat] != node.action) return false;
        continue;
      }
      base_.col[flat] = node.action;
      base_.known[flat] = 1;
      queue.push_back(flat);
    }
    return propagate(base_, std::move(queue));
  }

  // Invokes sink for every complete superposition table consistent with the
  // composition laws, superassociativity, and the forced columns, in
  // ascending table order.
  void search(const std::function<void(std::vector<Elem>)>& sink) const {
    descend(base_, sink);
  }

  // One random completion; false when the random choices contradict.
  bool random_fill(SplitMix64& rng, std::vector<Elem>& out) const {
    State st = base_;
    for (std::size_t flat = 0; flat < tuples_.tuple_count(); ++flat) {
      if (st.known[flat]) continue;
      std::vector<Elem> column(g_);
      for (Elem& v : column) v = rng.below(g_);
      State next = st;
      next.col[flat] = std::move(column);
      next.known[flat] = 1;
      if (!propagate(next, {flat})) return false;
      st = std::move(next);
    }
    if (!superassoc_complete(st)) return false;
    out = flatten(st);
    return true;
  }

 private:
  struct State {
    std::vector<std::vector<Elem>> col;  // per flat tuple: value per x
    std::vector<char> known;
  };

  Elem mann(std::uint32_t slot, Elem x, Elem y) const {
    return binops_[slot][static_cast<std::size_t>(x) * g_ + y];
  }

  // Worklist closure of the two composition laws from the given newly-known
  // columns; false on contradiction.  Ends with a partial
  // superassociativity sweep over fully-known instances.
  bool propagate(State& st, std::vector<std::size_t> queue) const {
    auto force = [&](std::size_t flat, std::vector<Elem> column) {
      if (st.known[flat]) {
        return st.col[flat] == column;
      }
      st.col[flat] = std::move(column);
      st.known[flat] = 1;
      queue.push_back(flat);
      return true;
    };
    while (!queue.empty()) {
      std::size_t flat = queue.back();
      queue.pop_back();
      std::vector<Elem> tuple = tuples_.decode(flat);
      const std::vector<Elem> col = st.col[flat];  // copy: st.col may grow
      for (std::uint32_t slot = 0; slot < n_; ++slot) {
        for (Elem z = 0; z < g_; ++z) {
          // Right law: [x, tuple] o_slot z = [x, tuple o_slot z pointwise].
          std::vector<Elem> shifted(n_);
          for (std::uint32_t k = 0; k < n_; ++k) {
            shifted[k] = mann(slot, tuple[k], z);
          }
          std::vector<Elem> column(g_);
          for (Elem x = 0; x < g_; ++x) column[x] = mann(slot, col[x], z);
          if (!force(tuples_.index(shifted), std::move(column))) return false;
        }
        for (Elem y = 0; y < g_; ++y) {
          // Left law: [x o_slot y, tuple] = [x, tuple with [y, tuple] at
          // slot].
          std::vector<Elem> substituted = tuple;
          substituted[slot] = col[y];
          std::vector<Elem> column(g_);
          for (Elem x = 0; x < g_; ++x) column[x] = col[mann(slot, x, y)];
          if (!force(tuples_.index(substituted), std::move(column))) {
            return false;
          }
        }
      }
    }
    return superassoc_known(st);
  }

  // Superassociativity over instances whose three columns are all known:
  // [[x, ys], zs] = [x, [y_1, zs], ..., [y_n, zs]].
  bool superassoc_known(const State& st) const {
    const std::size_t count = tuples_.tuple_count();
    for (std::size_t ys = 0; ys < count; ++ys) {
      if (!st.known[ys]) continue;
      std::vector<Elem> y_tuple = tuples_.decode(ys);
      for (std::size_t zs = 0; zs < count; ++zs) {
        if (!st.known[zs]) continue;
        std::vector<Elem> inner(n_);
        for (std::uint32_t k = 0; k < n_; ++k) {
          inner[k] = st.col[zs][y_tuple[k]];
        }
        std::size_t ws = tuples_.index(inner);
        if (!st.known[ws]) continue;
        for (Elem x = 0; x < g_; ++x) {
          if (st.col[zs][st.col[ys][x]] != st.col[ws][x]) return false;
        }
      }
    }
    return true;
  }

  bool superassoc_complete(const State& st) const {
    for (char k : st.known) {
      if (!k) throw InternalError("incomplete state at completion check");
    }
    return superassoc_known(st);
  }

  std::vector<Elem> flatten(const State& st) const {
    std::vector<Elem> super(tuples_.tuple_count() * g_);
    for (Elem x = 0; x < g_; ++x) {
      for (std::size_t flat = 0; flat < tuples_.tuple_count(); ++flat) {
        super[static_cast<std::size_t>(x) * tuples_.tuple_count() + flat] =
            st.col[flat][x];
      }
    }
    return super;
  }

  void descend(const State& st,
               const std::function<void(std::vector<Elem>)>& sink) const {
    std::size_t flat = 0;
    while (flat < tuples_.tuple_count() && st.known[flat]) ++flat;
    if (flat == tuples_.tuple_count()) {
      sink(flatten(st));
      return;
    }
    std::vector<Elem> column(g_, 0);
    bool more = true;
    while (more) {
      State next = st;
      next.col[flat] = column;
      next.known[flat] = 1;
      if (propagate(next, {flat})) descend(next, sink);
      // Advance the column vector in row-major order.
      more = false;
      for (std::uint32_t k = g_; k-- > 0;) {
        if (++column[k] < g_) {
          more = true;
          break;
        }
        column[k] = 0;
      }
    }
  }

  std::uint32_t g_, n_;
  std::vector<std::vector<Elem>> binops_;
  TupleIndexer tuples_;
  State base_;
};

std::vector<Elem> concat_tables(const AlgebraTable& alg) {
  std::vector<Elem> key = alg.super;
  for (const std::vector<Elem>& b : alg.binops) {
    key.insert(key.end(), b.begin(), b.end());
  }
  return key;
}

AlgebraTable relabel(const AlgebraTable& alg, const std::vector<Elem>& perm) {
  const std::uint32_t g = alg.g_size;
  TupleIndexer args(g, alg.n + 1);
  std::vector<Elem> super(alg.super.size());
  std::vector<Elem> tuple(alg.n + 1, 0);
  std::size_t flat = 0;
  std::vector<Elem> image(alg.n + 1);
  bool more = true;
  while (more) {
    for (std::uint32_t k = 0; k <= alg.n; ++k) image[k] = perm[tuple[k]];
    super[args.index(image)] = perm[alg.super[flat]];
    ++flat;
    more = args.advance(tuple);
  }
  std::vector<std::vector<Elem>> binops(alg.n);
  for (std::uint32_t slot = 0; slot < alg.n; ++slot) {
    binops[slot].resize(alg.binops[slot].size());
    for (Elem x = 0; x < g; ++x) {
      for (Elem y = 0; y < g; ++y) {
        binops[slot][static_cast<std::size_t>(perm[x]) * g + perm[y]] =
            perm[alg.binops[slot][static_cast<std::size_t>(x) * g + y]];
      }
    }
  }
  return AlgebraTable(g, alg.n, std::move(super), std::move(binops));
}

}  // namespace

std::vector<std::vector<Elem>> associative_binops(std::uint32_t g_size) {
  if (g_size == 0) throw InputError("size must be positive");
  if (g_size > 3) {
    throw InputError("associative tables are enumerated only up to size 3");
  }
  const std::size_t cells = static_cast<std::size_t>(g_size) * g_size;
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> table(cells, 0);
  bool more = true;
  while (more) {
    if (is_associative(table, g_size)) out.push_back(table);
    more = false;
    for (std::size_t k = cells; k-- > 0;) {
      if (++table[k] < g_size) {
        more = true;
        break;
      }
      table[k] = 0;
    }
  }
  return out;
}

std::vector<AlgebraTable> enumerate_abstract(std::uint32_t g_size,
                                             std::uint32_t n,
                                             std::size_t limit) {
  if (n == 0) throw InputError("arity must be positive");
  if (n > 4) throw InputError("enumeration supports arities up to 4");
  std::vector<std::vector<Elem>> assoc = associative_binops(g_size);

  std::vector<AlgebraTable> found;
  std::vector<std::size_t> pick(n, 0);
  bool more = true;
  while (more) {
    std::vector<std::vector<Elem>> binops;
    binops.reserve(n);
    for (std::size_t k : pick) binops.push_back(assoc[k]);
    SuperSearch search(g_size, n, binops);
    if (search.init()) {
      search.search([&](std::vector<Elem> super) {
        AlgebraTable alg(g_size, n, std::move(super), binops);
        if (check_axioms(alg).pass() && check_representability(alg).pass()) {
          found.push_back(std::move(alg));
        }
      });
    }
    more = false;
    for (std::uint32_t k = n; k-- > 0;) {
      if (++pick[k] < assoc.size()) {
        more = true;
        break;
      }
      pick[k] = 0;
    }
  }
  std::sort(found.begin(), found.end(),
            [](const AlgebraTable& a, const AlgebraTable& b) {
              return concat_tables(a) < concat_tables(b);
            });
  if (limit != 0 && found.size() > limit) found.resize(limit);
  return found;
}

std::vector<FunctionSet> enumerate_function_algebras(std::uint32_t carrier,
                                                     std::uint32_t n,
                                                     bool require_projectors,
                                                     std::size_t limit) {
  if (carrier == 0) throw InputError("carrier size must be positive");
  if (n == 0) throw InputError("arity must be positive");
  TupleIndexer tuples(carrier, n);
  double log_count =
      static_cast<double>(tuples.tuple_count()) * std::log2(double(carrier));
  if (log_count > 4.0 + 1e-9) {
    throw InputError(
        "carrier too large: more than 16 full functions to enumerate over");
  }

  // The universe of full functions in ascending table order.
  std::vector<PartialFunctionTable> universe;
  {
    std::vector<std::int32_t> entries(tuples.tuple_count(), 0);
    bool more = true;
    while (more) {
      universe.emplace_back(carrier, n, entries);
      more = false;
      for (std::size_t k = entries.size(); k-- > 0;) {
        if (++entries[k] < static_cast<std::int32_t>(carrier)) {
          more = true;
          break;
        }
        entries[k] = 0;
      }
    }
  }
  const std::size_t u = universe.size();
  std::vector<std::size_t> projector_ids;
  for (std::uint32_t slot = 0; slot < n; ++slot) {
    PartialFunctionTable proj =
        PartialFunctionTable::projector(carrier, n, slot);
    std::size_t id = 0;
    while (id < u && !(universe[id] == proj)) ++id;
    if (id == u) throw InternalError("projector missing from the universe");
    projector_ids.push_back(id);
  }

  // Precompute operation tables over universe indices.
  auto index_of = [&](const PartialFunctionTable& f) {
    std::size_t lo = 0, hi = u;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (universe[mid].entries < f.entries) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == u || !(universe[lo] == f)) {
      throw InternalError("operation left the full-function universe");
    }
    return lo;
  };
  TupleIndexer picks(static_cast<std::uint32_t>(u), n);
  std::vector<std::size_t> super_table(u * picks.tuple_count());
  for (std::size_t f = 0; f < u; ++f) {
    std::vector<Elem> pick(n, 0);
    std::size_t flat = 0;
    std::vector<PartialFunctionTable> gs(n);
    bool more = true;
    while (more) {
      for (std::uint32_t k = 0; k < n; ++k) gs[k] = universe[pick[k]];
      super_table[f * picks.tuple_count() + flat] =
          index_of(superpose(universe[f], gs));
      ++flat;
      more = picks.advance(pick);
    }
  }
  std::vector<std::vector<std::size_t>> mann_table(n);
  for (std::uint32_t slot = 0; slot < n; ++slot) {
    mann_table[slot].resize(u * u);
    for (std::size_t f = 0; f < u; ++f) {
      for (std::size_t h = 0; h < u; ++h) {
        mann_table[slot][f * u + h] =
            index_of(mann_compose(universe[f], universe[h], slot));
      }
    }
  }

  // Candidate masks are split across workers; survivors are gathered and
  // sorted before emission so the output order never depends on scheduling.
  const std::int64_t mask_limit = std::int64_t{1} << u;
  std::vector<std::uint32_t> closed_masks;
#pragma omp parallel
  {
    std::vector<std::uint32_t> local;
#pragma omp for schedule(dynamic, 1024) nowait
    for (std::int64_t m = 1; m < mask_limit; ++m) {
      const std::uint32_t mask = static_cast<std::uint32_t>(m);
      if (require_projectors) {
        bool has = true;
        for (std::size_t id : projector_ids) {
          if (!((mask >> id) & 1)) {
            has = false;
            break;
          }
        }
        if (!has) continue;
      }
      std::vector<std::size_t> members;
      for (std::size_t id = 0; id < u; ++id) {
        if ((mask >> id) & 1) members.push_back(id);
      }
      bool closed = true;
      for (std::size_t f : members) {
        // Superpositions over member picks.
        std::vector<std::size_t> idx(n, 0);
        std::vector<Elem> tuple(n);
        bool more = true;
        while (more && closed) {
          for (std::uint32_t k = 0; k < n; ++k) {
            tuple[k] = static_cast<Elem>(members[idx[k]]);
          }
          std::size_t result =
              super_table[f * picks.tuple_count() + picks.index(tuple)];
          if (!((mask >> result) & 1)) closed = false;
          more = false;
          for (std::uint32_t k = n; k-- > 0;) {
            if (++idx[k] < members.size()) {
              more = true;
              break;
            }
            idx[k] = 0;
          }
        }
        if (!closed) break;
        for (std::uint32_t slot = 0; slot < n && closed; ++slot) {
          for (std::size_t h : members) {
            if (!((mask >> mann_table[slot][f * u + h]) & 1)) {
              closed = false;
              break;
            }
          }
        }
        if (!closed) break;
      }
      if (closed) local.push_back(mask);
    }
#pragma omp critical
    closed_masks.insert(closed_masks.end(), local.begin(), local.end());
  }
  std::sort(closed_masks.begin(), closed_masks.end());
  if (limit != 0 && closed_masks.size() > limit) closed_masks.resize(limit);

  std::vector<FunctionSet> found;
  found.reserve(closed_masks.size());
  for (std::uint32_t mask : closed_masks) {
    FunctionSet fs(carrier, n);
    for (std::size_t id = 0; id < u; ++id) {
      if ((mask >> id) & 1) fs.insert(universe[id]);
    }
    found.push_back(std::move(fs));
  }
  return found;
}

std::vector<AlgebraTable> reduce_isomorphic(
    const std::vector<AlgebraTable>& algebras) {
  std::map<std::vector<Elem>, AlgebraTable> chosen;
  for (const AlgebraTable& alg : algebras) {
    if (alg.g_size > 6) {
      throw InputError("relabeling reduction supports sizes up to 6");
    }
    std::vector<Elem> perm(alg.g_size);
    for (Elem x = 0; x < alg.g_size; ++x) perm[x] = x;
    std::vector<Elem> canon = concat_tables(alg);
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<Elem> key = concat_tables(relabel(alg, perm));
      if (key < canon) canon = std::move(key);
    }
    auto it = chosen.find(canon);
    if (it == chosen.end()) {
      chosen.emplace(std::move(canon), alg);
    } else if (concat_tables(alg) < concat_tables(it->second)) {
      it->second = alg;
    }
  }
  std::vector<AlgebraTable> out;
  out.reserve(chosen.size());
  for (auto& [key, alg] : chosen) out.push_back(std::move(alg));
  std::sort(out.begin(), out.end(),
            [](const AlgebraTable& a, const AlgebraTable& b) {
              return concat_tables(a) < concat_tables(b);
            });
  return out;
}

AlgebraTable random_algebra(std::uint64_t seed, std::uint32_t g_size,
                            std::uint32_t n) {
  if (g_size == 0 || g_size > 3) {
    throw InputError("random generation supports sizes 1 to 3");
  }
  if (n == 0 || n > 4) {
    throw InputError("random generation supports arities 1 to 4");
  }
  SplitMix64 rng(seed);
  const std::size_t cells = static_cast<std::size_t>(g_size) * g_size;
  for (std::size_t attempt = 0; attempt < 200000; ++attempt) {
    std::vector<std::vector<Elem>> binops(n);
    bool ok = true;
    for (std::uint32_t slot = 0; slot < n && ok; ++slot) {
      ok = false;
      for (std::size_t tries = 0; tries < 4000; ++tries) {
        std::vector<Elem> table(cells);
        for (Elem& v : table) v = rng.below(g_size);
        if (is_associative(table, g_size)) {
          binops[slot] = std::move(table);
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    SuperSearch search(g_size, n, binops);
    if (!search.init()) continue;
    std::vector<Elem> super;
    if (!search.random_fill(rng, super)) continue;
    AlgebraTable alg(g_size, n, std::move(super), std::move(binops));
    if (check_axioms(alg).pass() && check_representability(alg).pass()) {
      return alg;
    }
  }
  throw MathError("random search found no algebra for this seed");
}

}  // namespace menger
