#include "menger/relations.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace menger {

namespace {

// Every one-step polynomial map as a full value table over the carrier:
// plugging the argument into one slot of a superposition with constant
// outer element and constant companions, or composing a constant onto it.
std::vector<std::vector<Elem>> one_step_maps(const AlgebraTable& alg) {
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  std::vector<std::vector<Elem>> w_tuples;
  if (n == 1) {
    w_tuples.push_back({});
  } else {
    TupleIndexer rest(g, n - 1);
    std::vector<Elem> w(n - 1, 0);
    bool more = true;
    while (more) {
      w_tuples.push_back(w);
      more = rest.advance(w);
    }
  }

  std::vector<std::vector<Elem>> maps;
  std::vector<Elem> args(n + 1);
  for (Elem outer = 0; outer < g; ++outer) {
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      for (const std::vector<Elem>& w : w_tuples) {
        std::vector<Elem> table(g);
        for (Elem u = 0; u < g; ++u) {
          args[0] = outer;
          std::size_t wi = 0;
          for (std::uint32_t k = 0; k < n; ++k) {
            args[1 + k] = (k == slot) ? u : w[wi++];
          }
          table[u] = alg.sup(args);
        }
        maps.push_back(std::move(table));
      }
    }
  }
  for (std::uint32_t slot = 0; slot < n; ++slot) {
    for (Elem outer = 0; outer < g; ++outer) {
      std::vector<Elem> table(g);
      for (Elem u = 0; u < g; ++u) table[u] = alg.mann(slot, outer, u);
      maps.push_back(std::move(table));
    }
  }
  return maps;
}

std::vector<char> orbit_mask(const std::vector<std::vector<Elem>>& maps,
                             std::uint32_t g, Elem x) {
  std::vector<char> seen(g, 0);
  std::vector<Elem> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    Elem u = stack.back();
    stack.pop_back();
    for (const std::vector<Elem>& m : maps) {
      Elem v = m[u];
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

BinaryRelation pair_orbit_reach(const std::vector<std::vector<Elem>>& maps,
                                std::uint32_t g, Elem x, Elem y) {
  BinaryRelation seen(g);
  std::vector<std::pair<Elem, Elem>> stack{{x, y}};
  seen.set(x, y);
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    for (const std::vector<Elem>& m : maps) {
      Elem a = m[u];
      Elem b = m[v];
      if (!seen.test(a, b)) {
        seen.set(a, b);
        stack.emplace_back(a, b);
      }
    }
  }
  return seen;
}

std::vector<std::pair<Elem, Elem>> relation_pairs(const BinaryRelation& rel) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < rel.size(); ++x) {
    for (Elem y = 0; y < rel.size(); ++y) {
      if (rel.test(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

// First violation of compatibility with substituted arguments (inner
// positions vary along related pairs, outer element fixed).
std::optional<RelationFailure> v_regular_failure(
    const AlgebraTable& alg, const BinaryRelation& rel,
    const std::vector<std::pair<Elem, Elem>>& pairs) {
  if (pairs.empty()) return std::nullopt;
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Elem> xs(n + 1);
  std::vector<Elem> ys(n + 1);
  bool more = true;
  while (more) {
    for (Elem outer = 0; outer < g; ++outer) {
      xs[0] = outer;
      ys[0] = outer;
      for (std::uint32_t k = 0; k < n; ++k) {
        xs[1 + k] = pairs[idx[k]].first;
        ys[1 + k] = pairs[idx[k]].second;
      }
      if (!rel.test(alg.sup(xs), alg.sup(ys))) {
        RelationFailure f;
        f.clause = "bracket";
        f.args.push_back(outer);
        for (std::uint32_t k = 0; k < n; ++k) {
          f.args.push_back(xs[1 + k]);
          f.args.push_back(ys[1 + k]);
        }
        return f;
      }
    }
    more = false;
    for (std::uint32_t k = n; k-- > 0;) {
      if (++idx[k] < pairs.size()) {
        more = true;
        break;
      }
      idx[k] = 0;
    }
  }
  for (const auto& [x, y] : pairs) {
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      for (Elem outer = 0; outer < g; ++outer) {
        if (!rel.test(alg.mann(slot, outer, x), alg.mann(slot, outer, y))) {
          return RelationFailure{"composition", {slot, outer, x, y}};
        }
      }
    }
  }
  return std::nullopt;
}

// First violation of compatibility with a substituted head (outer element
// varies along a related pair, arguments fixed).
std::optional<RelationFailure> l_regular_failure(
    const AlgebraTable& alg, const BinaryRelation& rel,
    const std::vector<std::pair<Elem, Elem>>& pairs) {
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  TupleIndexer args(g, n);
  std::vector<Elem> xs(n + 1);
  std::vector<Elem> ys(n + 1);
  for (const auto& [x, y] : pairs) {
    std::vector<Elem> zs(n, 0);
    bool more = true;
    while (more) {
      xs[0] = x;
      ys[0] = y;
      std::copy(zs.begin(), zs.end(), xs.begin() + 1);
      std::copy(zs.begin(), zs.end(), ys.begin() + 1);
      if (!rel.test(alg.sup(xs), alg.sup(ys))) {
        RelationFailure f;
        f.clause = "bracket";
        f.args = {x, y};
        f.args.insert(f.args.end(), zs.begin(), zs.end());
        return f;
      }
      more = args.advance(zs);
    }
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      for (Elem z = 0; z < g; ++z) {
        if (!rel.test(alg.mann(slot, x, z), alg.mann(slot, y, z))) {
          return RelationFailure{"composition", {slot, x, y, z}};
        }
      }
    }
  }
  return std::nullopt;
}

// First violation of compatibility with both sides substituted at once.
std::optional<RelationFailure> stability_failure(
    const AlgebraTable& alg, const BinaryRelation& rel,
    const std::vector<std::pair<Elem, Elem>>& pairs) {
  if (pairs.empty()) return std::nullopt;
  const std::uint32_t n = alg.n;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Elem> xs(n + 1);
  std::vector<Elem> ys(n + 1);
  for (const auto& [x, y] : pairs) {
    idx.assign(n, 0);
    bool more = true;
    while (more) {
      xs[0] = x;
      ys[0] = y;
      for (std::uint32_t k = 0; k < n; ++k) {
        xs[1 + k] = pairs[idx[k]].first;
        ys[1 + k] = pairs[idx[k]].second;
      }
      if (!rel.test(alg.sup(xs), alg.sup(ys))) {
        RelationFailure f;
        f.clause = "bracket";
        f.args = {x, y};
        for (std::uint32_t k = 0; k < n; ++k) {
          f.args.push_back(xs[1 + k]);
          f.args.push_back(ys[1 + k]);
        }
        return f;
      }
      more = false;
      for (std::uint32_t k = n; k-- > 0;) {
        if (++idx[k] < pairs.size()) {
          more = true;
          break;
        }
        idx[k] = 0;
      }
    }
  }
  for (const auto& [x1, y1] : pairs) {
    for (const auto& [x2, y2] : pairs) {
      for (std::uint32_t slot = 0; slot < alg.n; ++slot) {
        if (!rel.test(alg.mann(slot, x1, x2), alg.mann(slot, y1, y2))) {
          return RelationFailure{"composition", {slot, x1, y1, x2, y2}};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RegularityReport relation_properties(const AlgebraTable& alg,
                                     const BinaryRelation& rel) {
  if (rel.size() != alg.g_size) {
    throw InputError("relation size differs from the algebra carrier");
  }
  std::vector<std::pair<Elem, Elem>> pairs = relation_pairs(rel);
  RegularityReport report;
  report.v_failure = v_regular_failure(alg, rel, pairs);
  report.l_failure = l_regular_failure(alg, rel, pairs);
  report.stable_failure = stability_failure(alg, rel, pairs);
  report.v_regular = !report.v_failure.has_value();
  report.l_regular = !report.l_failure.has_value();
  report.stable = !report.stable_failure.has_value();
  if (rel.is_reflexive() && rel.is_transitive()) {
    if (report.stable != (report.v_regular && report.l_regular)) {
      throw InternalError(
          "stability must coincide with the two one-sided properties for a "
          "reflexive transitive relation");
    }
  }
  return report;
}

LeftIdealReport is_l_ideal(const AlgebraTable& alg,
                           const std::vector<char>& subset) {
  if (subset.size() != alg.g_size) {
    throw InputError("subset size differs from the algebra carrier");
  }
  LeftIdealReport report;
  report.empty =
      std::none_of(subset.begin(), subset.end(), [](char c) { return c != 0; });
  report.is_ideal = true;
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  std::vector<std::vector<Elem>> w_tuples;
  if (n == 1) {
    w_tuples.push_back({});
  } else {
    TupleIndexer rest(g, n - 1);
    std::vector<Elem> w(n - 1, 0);
    bool more = true;
    while (more) {
      w_tuples.push_back(w);
      more = rest.advance(w);
    }
  }
  std::vector<Elem> args(n + 1);
  for (Elem x = 0; x < g && report.is_ideal; ++x) {
    if (!subset[x]) continue;
    for (Elem outer = 0; outer < g && report.is_ideal; ++outer) {
      for (std::uint32_t slot = 0; slot < n && report.is_ideal; ++slot) {
        for (const std::vector<Elem>& w : w_tuples) {
          args[0] = outer;
          std::size_t wi = 0;
          for (std::uint32_t k = 0; k < n; ++k) {
            args[1 + k] = (k == slot) ? x : w[wi++];
          }
          if (!subset[alg.sup(args)]) {
            report.is_ideal = false;
            RelationFailure f;
            f.clause = "bracket";
            f.args = {slot, outer, x};
            f.args.insert(f.args.end(), w.begin(), w.end());
            report.failure = std::move(f);
            break;
          }
        }
        if (!report.is_ideal) break;
        if (!subset[alg.mann(slot, outer, x)]) {
          report.is_ideal = false;
          report.failure = RelationFailure{"composition", {slot, outer, x}};
        }
      }
    }
  }
  return report;
}

std::vector<char> polynomial_orbit(const AlgebraTable& alg, Elem x) {
  if (x >= alg.g_size) throw InputError("element out of range");
  return orbit_mask(one_step_maps(alg), alg.g_size, x);
}

BinaryRelation pair_orbit(const AlgebraTable& alg, Elem x, Elem y) {
  if (x >= alg.g_size || y >= alg.g_size) {
    throw InputError("element out of range");
  }
  return pair_orbit_reach(one_step_maps(alg), alg.g_size, x, y);
}

OrbitSeparation orbit_separation(const AlgebraTable& alg,
                                 const std::vector<char>& subset) {
  if (subset.size() != alg.g_size) {
    throw InputError("subset size differs from the algebra carrier");
  }
  const std::uint32_t g = alg.g_size;
  std::vector<std::vector<Elem>> maps = one_step_maps(alg);
  OrbitSeparation out{BinaryRelation(g), std::vector<char>(g, 0)};
  for (Elem x = 0; x < g; ++x) {
    for (Elem y = x; y < g; ++y) {
      BinaryRelation reach = pair_orbit_reach(maps, g, x, y);
      bool same = true;
      for (Elem u = 0; u < g && same; ++u) {
        for (Elem v = 0; v < g; ++v) {
          if (reach.test(u, v) && (subset[u] != 0) != (subset[v] != 0)) {
            same = false;
            break;
          }
        }
      }
      if (same) {
        out.relation.set(x, y);
        out.relation.set(y, x);
      }
    }
  }
  for (Elem x = 0; x < g; ++x) {
    std::vector<char> reach = orbit_mask(maps, g, x);
    bool hits = false;
    for (Elem u = 0; u < g; ++u) {
      if (reach[u] && subset[u]) {
        hits = true;
        break;
      }
    }
    out.unreachable[x] = hits ? 0 : 1;
  }

  if (!out.relation.is_reflexive() || !out.relation.is_symmetric() ||
      !out.relation.is_transitive()) {
    throw InternalError("separation relation is not an equivalence");
  }
  if (v_regular_failure(alg, out.relation, relation_pairs(out.relation))
          .has_value()) {
    throw InternalError("separation relation is not v-regular");
  }
  bool any = false;
  for (char c : out.unreachable) any = any || c != 0;
  if (any) {
    for (Elem x = 0; x < g; ++x) {
      if (!out.unreachable[x]) continue;
      for (Elem y = 0; y < g; ++y) {
        bool related = out.relation.test(x, y);
        bool inside = out.unreachable[y] != 0;
        if (related != inside) {
          throw InternalError(
              "unreachable set is not a single separation class");
        }
      }
    }
    if (!is_l_ideal(alg, out.unreachable).is_ideal) {
      throw InternalError("unreachable set is not a left ideal");
    }
  }
  return out;
}

bool DeterminingPairReport::pass() const {
  if (!shape_symmetric.pass || !shape_transitive.pass) return false;
  for (const ConditionVerdict& c : conditions) {
    if (!c.pass) return false;
  }
  return true;
}

std::string DeterminingPairReport::first_failure() const {
  if (!shape_symmetric.pass) return "relation symmetry";
  if (!shape_transitive.pass) return "relation transitivity";
  static const char* kNames[6] = {
      "base and selector domain coverage", "selectors outside the kernel",
      "selector class action",             "word class action",
      "base image regularity",             "kernel class and ideal structure"};
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    if (!conditions[k].pass) return kNames[k];
  }
  return "";
}

namespace {

std::optional<Elem> star_mann(const StarDomain& dom, Elem g, std::uint32_t slot,
                              Elem x) {
  std::vector<Elem> tuple(dom.base().n);
  for (std::uint32_t i = 0; i < tuple.size(); ++i) tuple[i] = dom.selector(i);
  tuple[slot] = x;
  return dom.act(g, tuple);
}

// Iterates the cartesian product of the given member lists, invoking fn with
// each assembled tuple; fn returns false to stop early.
template <typename Fn>
void for_each_product(const std::vector<const std::vector<Elem>*>& lists,
                      Fn&& fn) {
  for (const std::vector<Elem>* list : lists) {
    if (list->empty()) return;
  }
  std::vector<std::size_t> idx(lists.size(), 0);
  std::vector<Elem> tuple(lists.size());
  bool more = true;
  while (more) {
    for (std::size_t k = 0; k < lists.size(); ++k) {
      tuple[k] = (*lists[k])[idx[k]];
    }
    if (!fn(static_cast<const std::vector<Elem>&>(tuple))) return;
    more = false;
    for (std::size_t k = lists.size(); k-- > 0;) {
      if (++idx[k] < lists[k]->size()) {
        more = true;
        break;
      }
      idx[k] = 0;
    }
  }
}

}  // namespace

DeterminingPairReport verify_determining_pair(const DeterminingPair& pair) {
  if (pair.domain == nullptr) throw InputError("pair has no domain");
  const StarDomain& dom = *pair.domain;
  const AlgebraTable& alg = dom.base();
  const std::uint32_t s = dom.size();
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  if (pair.relation.size() != s) {
    throw InputError("relation size differs from the star domain");
  }
  if (pair.kernel.size() != s) {
    throw InputError("kernel size differs from the star domain");
  }

  DeterminingPairReport report;
  if (!pair.relation.is_symmetric()) {
    report.shape_symmetric = {false, "relation is not symmetric"};
  }
  if (!pair.relation.is_transitive()) {
    report.shape_transitive = {false, "relation is not transitive"};
  }

  std::unordered_map<Elem, std::vector<Elem>> row_cache;
  auto row = [&](Elem x) -> const std::vector<Elem>& {
    auto it = row_cache.find(x);
    if (it == row_cache.end()) {
      it = row_cache.emplace(x, pair.relation.row_elements(x)).first;
    }
    return it->second;
  };

  // Condition 0: embedded base elements and selectors in the domain.
  for (Elem e = 0; e < g; ++e) {
    if (!pair.relation.test(dom.embed(e), dom.embed(e))) {
      std::ostringstream msg;
      msg << "element " << e << " is not related to itself";
      report.conditions[0] = {false, msg.str()};
      break;
    }
  }
  if (report.conditions[0].pass) {
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      Elem sel = dom.selector(slot);
      if (!pair.relation.test(sel, sel)) {
        std::ostringstream msg;
        msg << "selector for slot " << slot << " is not related to itself";
        report.conditions[0] = {false, msg.str()};
        break;
      }
    }
  }

  // Condition 1: selectors outside the kernel.
  for (std::uint32_t slot = 0; slot < n; ++slot) {
    if (pair.kernel[dom.selector(slot)]) {
      std::ostringstream msg;
      msg << "selector for slot " << slot << " lies in the kernel";
      report.conditions[1] = {false, msg.str()};
      break;
    }
  }

  // Condition 2: acting on the selector classes lands in the actor's class.
  {
    std::vector<const std::vector<Elem>*> lists;
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      lists.push_back(&row(dom.selector(slot)));
    }
    for (Elem e = 0; e < g && report.conditions[2].pass; ++e) {
      for_each_product(lists, [&](const std::vector<Elem>& tuple) {
        std::optional<Elem> value = dom.act(e, tuple);
        if (value && !pair.relation.test(dom.embed(e), *value)) {
          std::ostringstream msg;
          msg << "acting by " << e << " on selector-class tuple "
              << tuple_to_string(tuple) << " gives " << *value
              << " outside the actor's class";
          report.conditions[2] = {false, msg.str()};
          return false;
        }
        return true;
      });
    }
  }

  // Condition 3: acting on reachable word-state class tuples lands in the
  // class of the word's action.
  {
    WordStateSpace space = reachable_word_states(alg);
    if (!space.consistent) {
      report.conditions[3] = {
          false,
          "word actions are not well-defined (state collision in the base)"};
    } else {
      for (const WordStateNode& node : space.nodes) {
        if (!report.conditions[3].pass) break;
        std::vector<const std::vector<Elem>*> lists;
        for (std::uint32_t slot = 0; slot < n; ++slot) {
          Elem star = node.state[slot] < g ? dom.embed(node.state[slot])
                                           : dom.selector(slot);
          lists.push_back(&row(star));
        }
        for (Elem e = 0; e < g && report.conditions[3].pass; ++e) {
          Elem target = dom.embed(node.action[e]);
          for_each_product(lists, [&](const std::vector<Elem>& tuple) {
            std::optional<Elem> value = dom.act(e, tuple);
            if (value && !pair.relation.test(target, *value)) {
              std::ostringstream msg;
              msg << "acting by " << e << " on the class tuple of word state "
                  << tuple_to_string(node.state) << " gives " << *value
                  << " outside the class of the word action "
                  << node.action[e];
              report.conditions[3] = {false, msg.str()};
              return false;
            }
            return true;
          });
        }
      }
    }
  }

  // Condition 4: the relation restricted to the relation-image of the base
  // is v-regular under the star action.
  {
    std::vector<char> in_image(s, 0);
    for (Elem e = 0; e < g; ++e) {
      for (Elem y : row(dom.embed(e))) in_image[y] = 1;
    }
    std::vector<Elem> members;
    for (Elem x = 0; x < s; ++x) {
      if (in_image[x]) members.push_back(x);
    }
    std::vector<std::size_t> image_class(s, kNpos);
    std::size_t class_count = 0;
    for (Elem x : members) {
      if (image_class[x] != kNpos) continue;
      std::size_t id = class_count++;
      for (Elem y : row(x)) {
        if (in_image[y]) image_class[y] = id;
      }
      image_class[x] = id;
    }

    // Superposition part: all defined products over one class tuple must
    // land in a single image class.
    for (Elem e = 0; e < g && report.conditions[4].pass; ++e) {
      std::map<std::vector<std::size_t>, Elem> seen_value;
      std::vector<std::size_t> idx(n, 0);
      std::vector<Elem> tuple(n);
      std::vector<std::size_t> key(n);
      if (members.empty()) break;
      bool more = true;
      while (more && report.conditions[4].pass) {
        for (std::uint32_t k = 0; k < n; ++k) {
          tuple[k] = members[idx[k]];
          key[k] = image_class[tuple[k]];
        }
        std::optional<Elem> value = dom.act(e, tuple);
        if (value) {
          if (image_class[*value] == kNpos) {
            std::ostringstream msg;
            msg << "acting by " << e << " on base-image tuple "
                << tuple_to_string(tuple) << " gives " << *value
                << " outside the base image";
            report.conditions[4] = {false, msg.str()};
            break;
          }
          auto it = seen_value.find(key);
          if (it == seen_value.end()) {
            seen_value.emplace(key, *value);
          } else if (!pair.relation.test(it->second, *value)) {
            std::ostringstream msg;
            msg << "acting by " << e
                << " on related base-image tuples gives unrelated values "
                << it->second << " and " << *value;
            report.conditions[4] = {false, msg.str()};
            break;
          }
        }
        more = false;
        for (std::uint32_t k = n; k-- > 0;) {
          if (++idx[k] < members.size()) {
            more = true;
            break;
          }
          idx[k] = 0;
        }
      }
    }
    // Composition part: slotwise action on related members gives related
    // values inside the image.
    for (Elem e = 0; e < g && report.conditions[4].pass; ++e) {
      for (std::uint32_t slot = 0; slot < n && report.conditions[4].pass;
           ++slot) {
        for (std::size_t a = 0; a < members.size(); ++a) {
          for (std::size_t b = a; b < members.size(); ++b) {
            Elem x = members[a];
            Elem y = members[b];
            if (!pair.relation.test(x, y)) continue;
            std::optional<Elem> vx = star_mann(dom, e, slot, x);
            std::optional<Elem> vy = star_mann(dom, e, slot, y);
            if (vx && image_class[*vx] == kNpos) {
              std::ostringstream msg;
              msg << "composing " << e << " with base-image element " << x
                  << " at slot " << slot << " leaves the base image";
              report.conditions[4] = {false, msg.str()};
              break;
            }
            if (vx && vy && !pair.relation.test(*vx, *vy)) {
              std::ostringstream msg;
              msg << "composing " << e << " with related base-image elements "
                  << x << " and " << y << " at slot " << slot
                  << " gives unrelated values";
              report.conditions[4] = {false, msg.str()};
              break;
            }
          }
          if (!report.conditions[4].pass) break;
        }
      }
    }
  }

  // Condition 5: a nonempty kernel is one class whose base part is a left
  // ideal.
  {
    std::vector<Elem> kernel_members;
    for (Elem x = 0; x < s; ++x) {
      if (pair.kernel[x]) kernel_members.push_back(x);
    }
    if (!kernel_members.empty()) {
      const std::vector<Elem>& cls = row(kernel_members.front());
      if (cls != kernel_members) {
        report.conditions[5] = {
            false, "kernel differs from the class of its first member"};
      } else {
        std::vector<char> base_part(g, 0);
        for (Elem e = 0; e < g; ++e) base_part[e] = pair.kernel[dom.embed(e)];
        LeftIdealReport ideal = is_l_ideal(alg, base_part);
        if (!ideal.is_ideal) {
          report.conditions[5] = {
              false, "the kernel's base part is not a left ideal"};
        }
      }
    }
  }
  return report;
}

ClassIndexing index_classes(const DeterminingPair& pair) {
  const StarDomain& dom = *pair.domain;
  const std::uint32_t s = dom.size();
  const std::uint32_t g = dom.base().g_size;
  const std::uint32_t n = dom.base().n;
  std::vector<char> marker(s, 0);
  for (Elem e = 0; e < g; ++e) marker[dom.embed(e)] = 1;
  for (std::uint32_t slot = 0; slot < n; ++slot) marker[dom.selector(slot)] = 1;

  ClassIndexing out;
  out.class_of.assign(s, kNpos);
  for (Elem x = 0; x < s; ++x) {
    if (out.class_of[x] != kNpos) continue;
    if (pair.kernel[x]) continue;
    if (!pair.relation.test(x, x)) continue;
    std::vector<Elem> members = pair.relation.row_elements(x);
    bool meets = false;
    for (Elem y : members) {
      if (marker[y]) {
        meets = true;
        break;
      }
    }
    if (!meets) continue;
    std::size_t id = out.classes.size();
    for (Elem y : members) out.class_of[y] = id;
    out.classes.push_back(std::move(members));
  }
  return out;
}

SimplestRep simplest_rep(const DeterminingPair& pair) {
  DeterminingPairReport check = verify_determining_pair(pair);
  if (!check.pass()) {
    throw MathError("determining pair fails: " + check.first_failure());
  }
  const StarDomain& dom = *pair.domain;
  const AlgebraTable& alg = dom.base();
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;

  SimplestRep out;
  out.classes = index_classes(pair);
  const std::size_t carrier = out.classes.classes.size();
  if (carrier == 0) {
    throw InternalError("no indexed classes for a verified pair");
  }

  // Admissible tuples.
  std::vector<std::size_t> admissible;
  TupleIndexer class_tuples(static_cast<std::uint32_t>(carrier), n);
  {
    std::vector<char> meets_base(carrier, 0);
    for (Elem e = 0; e < g; ++e) {
      std::size_t c = out.classes.class_of[dom.embed(e)];
      if (c != kNpos) meets_base[c] = 1;
    }
    std::vector<Elem> base_classes;
    for (std::size_t c = 0; c < carrier; ++c) {
      if (meets_base[c]) base_classes.push_back(static_cast<Elem>(c));
    }
    if (!base_classes.empty()) {
      std::vector<std::size_t> idx(n, 0);
      std::vector<Elem> tuple(n);
      bool more = true;
      while (more) {
        for (std::uint32_t k = 0; k < n; ++k) tuple[k] = base_classes[idx[k]];
        admissible.push_back(class_tuples.index(tuple));
        more = false;
        for (std::uint32_t k = n; k-- > 0;) {
          if (++idx[k] < base_classes.size()) {
            more = true;
            break;
          }
          idx[k] = 0;
        }
      }
    }
    std::vector<Elem> sel_tuple(n);
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      std::size_t c = out.classes.class_of[dom.selector(slot)];
      if (c == kNpos) {
        throw InternalError("selector class missing from the indexing");
      }
      sel_tuple[slot] = static_cast<Elem>(c);
    }
    admissible.push_back(class_tuples.index(sel_tuple));

    WordStateSpace space = reachable_word_states(alg);
    for (const WordStateNode& node : space.nodes) {
      std::vector<Elem> tuple(n);
      bool ok = true;
      for (std::uint32_t slot = 0; slot < n; ++slot) {
        Elem star = node.state[slot] < g ? dom.embed(node.state[slot])
                                         : dom.selector(slot);
        std::size_t c = out.classes.class_of[star];
        if (c == kNpos) {
          ok = false;
          break;
        }
        tuple[slot] = static_cast<Elem>(c);
      }
      if (ok) admissible.push_back(class_tuples.index(tuple));
    }
    std::sort(admissible.begin(), admissible.end());
    admissible.erase(std::unique(admissible.begin(), admissible.end()),
                     admissible.end());
  }
  out.admissible = admissible;

  // Images by class-valued evaluation.
  out.rep.source = alg;
  out.rep.carrier = static_cast<std::uint32_t>(carrier);
  out.rep.kind = RepKind::kSimplest;
  for (Elem e = 0; e < g; ++e) {
    PartialFunctionTable table = PartialFunctionTable::empty(
        static_cast<std::uint32_t>(carrier), n);
    for (std::size_t flat : admissible) {
      std::vector<Elem> tuple = class_tuples.decode(flat);
      std::vector<const std::vector<Elem>*> lists;
      for (std::uint32_t k = 0; k < n; ++k) {
        lists.push_back(&out.classes.classes[tuple[k]]);
      }
      bool nonempty = false;
      bool kernel_hit = false;
      bool outside = false;
      bool split = false;
      std::size_t value_class = kNpos;
      for_each_product(lists, [&](const std::vector<Elem>& args) {
        std::optional<Elem> value = dom.act(e, args);
        if (!value) return true;
        nonempty = true;
        if (pair.kernel[*value]) {
          kernel_hit = true;
          return true;
        }
        std::size_t c = out.classes.class_of[*value];
        if (c == kNpos) {
          outside = true;
        } else if (value_class == kNpos) {
          value_class = c;
        } else if (value_class != c) {
          split = true;
        }
        return true;
      });
      if (!nonempty) {
        throw InternalError("empty action image on an admissible tuple");
      }
      bool defined = !kernel_hit && !outside && !split && value_class != kNpos;
      if (defined != !kernel_hit) {
        std::ostringstream msg;
        msg << "domain characterization violated for element " << e
            << " at class tuple " << tuple_to_string(tuple);
        throw MathError(msg.str());
      }
      if (defined) {
        table.entries[flat] = static_cast<std::int32_t>(value_class);
      }
    }
    out.rep.images.push_back(std::move(table));
  }
  RepVerifyReport rv = verify_representation(out.rep);
  if (!rv.pass()) {
    throw MathError(
        "class-valued images of a verified pair failed representation "
        "verification");
  }
  out.rep.verified = true;
  return out;
}

Decomposition decompose_rep(const AlgebraTable& alg, const Representation& rep,
                            std::size_t cap) {
  if (rep.source.g_size != alg.g_size || rep.source.n != alg.n ||
      rep.source.super != alg.super || rep.source.binops != alg.binops) {
    throw InputError("representation source differs from the given algebra");
  }
  if (!verify_representation(rep).pass()) {
    throw MathError("decomposition requires a verified representation");
  }

  Representation completed = complete_representation(rep);
  const std::uint32_t star_carrier = completed.carrier;
  const Elem alpha = rep.carrier;  // the appended sentinel point
  const std::uint32_t n = alg.n;
  const std::uint32_t g = alg.g_size;

  FunctionSet seed(star_carrier, n);
  std::vector<Elem> base_index;
  base_index.reserve(g);
  for (Elem e = 0; e < g; ++e) {
    base_index.push_back(static_cast<Elem>(seed.insert(completed.images[e])));
  }
  for (std::uint32_t slot = 0; slot < n; ++slot) {
    seed.insert(PartialFunctionTable::projector(star_carrier, n, slot));
  }
  Decomposition out{std::move(completed),
                    close_under_operations(seed, cap),
                    std::move(base_index),
                    {},
                    Representation{},
                    false,
                    {}};
  const std::size_t u_count = out.universe.size();
  std::shared_ptr<const StarDomain> domain =
      make_function_star(alg, out.universe, out.base_index);

  TupleIndexer base_tuples(rep.carrier, n);
  TupleIndexer star_tuples(star_carrier, n);
  std::vector<Elem> tuple(n, 0);
  bool more = base_tuples.tuple_count() > 0;
  while (more) {
    DecompositionPiece piece;
    piece.tuple = tuple;
    const std::size_t star_flat = star_tuples.index(tuple);

    // Value of every universe member at this tuple.
    std::vector<Elem> value(u_count);
    for (std::size_t u = 0; u < u_count; ++u) {
      std::int32_t v = out.universe[u].entries[star_flat];
      if (v == kUndef) {
        throw InternalError("universe member is not a full function");
      }
      value[u] = static_cast<Elem>(v);
    }
    // Values attained by embedded elements and projectors.
    std::vector<char> attained(star_carrier, 0);
    for (Elem e = 0; e < g; ++e) attained[value[out.base_index[e]]] = 1;
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      attained[value[domain->selector(slot)]] = 1;
    }

    BinaryRelation agree(static_cast<std::uint32_t>(u_count));
    for (std::size_t a = 0; a < u_count; ++a) {
      if (!attained[value[a]]) continue;
      for (std::size_t b = 0; b < u_count; ++b) {
        if (value[a] == value[b]) {
          agree.set(static_cast<Elem>(a), static_cast<Elem>(b));
        }
      }
    }
    std::vector<char> kernel(u_count, 0);
    for (std::size_t u = 0; u < u_count; ++u) {
      kernel[u] = value[u] == alpha ? 1 : 0;
    }
    piece.pair = DeterminingPair{domain, std::move(agree), std::move(kernel)};
    piece.simple = simplest_rep(piece.pair);

    // Common value of each indexed class at this tuple.
    const std::size_t carrier = piece.simple.classes.classes.size();
    std::vector<Elem> class_value(carrier);
    for (std::size_t c = 0; c < carrier; ++c) {
      const std::vector<Elem>& members = piece.simple.classes.classes[c];
      class_value[c] = value[members.front()];
      for (Elem m : members) {
        if (value[m] != class_value[c]) {
          throw InternalError("indexed class members disagree at the tuple");
        }
      }
    }
    piece.on_carrier.source = alg;
    piece.on_carrier.carrier = rep.carrier;
    piece.on_carrier.kind = RepKind::kSimplest;
    TupleIndexer class_tuples(static_cast<std::uint32_t>(carrier), n);
    for (Elem e = 0; e < g; ++e) {
      PartialFunctionTable table =
          PartialFunctionTable::empty(rep.carrier, n);
      const PartialFunctionTable& small = piece.simple.rep.images[e];
      for (std::size_t flat : piece.simple.admissible) {
        if (small.entries[flat] == kUndef) continue;
        std::vector<Elem> classes = class_tuples.decode(flat);
        std::vector<Elem> values(n);
        for (std::uint32_t k = 0; k < n; ++k) {
          values[k] = class_value[classes[k]];
        }
        table.entries[base_tuples.index(values)] = static_cast<std::int32_t>(
            class_value[static_cast<std::size_t>(small.entries[flat])]);
      }
      piece.on_carrier.images.push_back(std::move(table));
    }
    out.pieces.push_back(std::move(piece));
    more = base_tuples.advance(tuple);
  }

  // Union of the relabeled pieces, compared with the input bit-exactly.
  out.union_rep.source = alg;
  out.union_rep.carrier = rep.carrier;
  out.union_rep.kind = RepKind::kUnion;
  out.union_matches = true;
  for (Elem e = 0; e < g; ++e) {
    PartialFunctionTable merged = PartialFunctionTable::empty(rep.carrier, n);
    for (const DecompositionPiece& piece : out.pieces) {
      const PartialFunctionTable& part = piece.on_carrier.images[e];
      for (std::size_t flat = 0; flat < part.entries.size(); ++flat) {
        if (part.entries[flat] == kUndef) continue;
        if (merged.entries[flat] != kUndef &&
            merged.entries[flat] != part.entries[flat]) {
          if (out.union_matches) {
            std::ostringstream msg;
            msg << "pieces conflict for element " << e << " at tuple "
                << tuple_to_string(base_tuples.decode(flat));
            out.union_detail = msg.str();
            out.union_matches = false;
          }
          continue;
        }
        merged.entries[flat] = part.entries[flat];
      }
    }
    if (out.union_matches && !(merged == rep.images[e])) {
      std::ostringstream msg;
      msg << "union differs from the input for element " << e;
      out.union_detail = msg.str();
      out.union_matches = false;
    }
    out.union_rep.images.push_back(std::move(merged));
  }
  out.union_rep.verified = verify_representation(out.union_rep).pass();
  return out;
}

InclusionCriterionReport pair_inclusion_criterion(
    const DeterminingPair& pair, Elem g1, Elem g2,
    const SimplestRep* precomputed) {
  const StarDomain& dom = *pair.domain;
  const AlgebraTable& alg = dom.base();
  if (g1 >= alg.g_size || g2 >= alg.g_size) {
    throw InputError("element out of range");
  }
  SimplestRep local;
  const SimplestRep* simple = precomputed;
  if (simple == nullptr) {
    local = simplest_rep(pair);
    simple = &local;
  }

  InclusionCriterionReport report;
  report.by_images =
      is_included(simple->rep.images[g1], simple->rep.images[g2]);
  report.by_words = true;

  const std::uint32_t n = alg.n;
  // Base argument tuples.
  TupleIndexer args(alg.g_size, n);
  std::vector<Elem> xs(n, 0);
  std::vector<Elem> call1(n + 1);
  std::vector<Elem> call2(n + 1);
  bool more = true;
  while (more && report.by_words) {
    call1[0] = g1;
    call2[0] = g2;
    std::copy(xs.begin(), xs.end(), call1.begin() + 1);
    std::copy(xs.begin(), xs.end(), call2.begin() + 1);
    Elem u1 = alg.sup(call1);
    Elem u2 = alg.sup(call2);
    if (!pair.kernel[dom.embed(u1)] &&
        !pair.relation.test(dom.embed(u1), dom.embed(u2))) {
      report.by_words = false;
      RelationFailure f;
      f.clause = "base tuple";
      f.args = {g1, g2};
      f.args.insert(f.args.end(), xs.begin(), xs.end());
      report.witness = std::move(f);
    }
    more = args.advance(xs);
  }
  // The selector tuple.
  if (report.by_words && !pair.kernel[dom.embed(g1)] &&
      !pair.relation.test(dom.embed(g1), dom.embed(g2))) {
    report.by_words = false;
    report.witness = RelationFailure{"selector tuple", {g1, g2}};
  }
  // Word actions.
  if (report.by_words) {
    WordStateSpace space = reachable_word_states(alg);
    if (!space.consistent) {
      throw MathError("word actions are not well-defined for this algebra");
    }
    for (const WordStateNode& node : space.nodes) {
      Elem u1 = node.action[g1];
      Elem u2 = node.action[g2];
      if (!pair.kernel[dom.embed(u1)] &&
          !pair.relation.test(dom.embed(u1), dom.embed(u2))) {
        report.by_words = false;
        RelationFailure f;
        f.clause = "word";
        f.args = {g1, g2};
        for (const WordLetter& letter : node.witness) {
          f.args.push_back(letter.slot);
          f.args.push_back(letter.elem);
        }
        report.witness = std::move(f);
        break;
      }
    }
  }

  if (report.by_words != report.by_images) {
    std::ostringstream msg;
    msg << "word criterion (" << (report.by_words ? "true" : "false")
        << ") disagrees with image inclusion for elements " << g1 << " and "
        << g2;
    throw MathError(msg.str());
  }
  return report;
}

OrderCompatibilityReport order_polynomial_compatible(
    const AlgebraTable& alg, const BinaryRelation& zeta) {
  if (zeta.size() != alg.g_size) {
    throw InputError("relation size differs from the algebra carrier");
  }
  OrderCompatibilityReport report;
  report.pass = true;
  const std::uint32_t g = alg.g_size;
  std::vector<std::vector<Elem>> maps = one_step_maps(alg);
  std::unordered_map<Elem, std::vector<char>> orbit_cache;
  for (Elem g1 = 0; g1 < g && report.pass; ++g1) {
    for (Elem g2 = 0; g2 < g && report.pass; ++g2) {
      if (!zeta.test(g1, g2)) continue;
      auto it = orbit_cache.find(g1);
      if (it == orbit_cache.end()) {
        it = orbit_cache.emplace(g1, orbit_mask(maps, g, g1)).first;
      }
      const std::vector<char>& orbit1 = it->second;
      BinaryRelation pairs = pair_orbit_reach(maps, g, g2, g1);
      for (Elem e = 0; e < g && report.pass; ++e) {
        bool witness = false;
        for (Elem u = 0; u < g; ++u) {
          if (orbit1[u] && zeta.test(e, u)) {
            witness = true;
            break;
          }
        }
        if (!witness) continue;
        for (Elem v2 = 0; v2 < g && report.pass; ++v2) {
          for (Elem v1 = 0; v1 < g; ++v1) {
            if (!pairs.test(v2, v1)) continue;
            if (zeta.test(e, v2) && !zeta.test(e, v1)) {
              report.pass = false;
              report.failure =
                  RelationFailure{"compatibility", {e, g1, g2, v2, v1}};
              break;
            }
          }
        }
      }
    }
  }
  return report;
}

QuasiOrder inclusion_order(const FunctionSet& fs) {
  const std::uint32_t count = static_cast<std::uint32_t>(fs.size());
  QuasiOrder out{BinaryRelation(count), false, false, false};
  for (Elem a = 0; a < count; ++a) {
    for (Elem b = 0; b < count; ++b) {
      if (is_included(fs[a], fs[b])) out.rel.set(a, b);
    }
  }
  out.reflexive = out.rel.is_reflexive();
  out.transitive = out.rel.is_transitive();
  out.antisymmetric = out.rel.is_antisymmetric();
  if (!out.reflexive || !out.transitive || !out.antisymmetric) {
    throw InternalError("table inclusion failed to be a partial order");
  }
  return out;
}

OrderedRepResult represent_ordered(const OrderedAlgebra& oalg) {
  const AlgebraTable& alg = oalg.alg;
  if (oalg.order.size() != alg.g_size) {
    throw InputError("order size differs from the algebra carrier");
  }
  if (!oalg.order.is_reflexive() || !oalg.order.is_transitive()) {
    throw InputError("the order must be reflexive and transitive");
  }
  if (!check_representability(alg).pass()) {
    throw MathError("ordered representation: representability conditions fail");
  }
  if (!oalg.order.is_antisymmetric()) {
    throw MathError("ordered representation: the order is not antisymmetric");
  }
  RegularityReport reg = relation_properties(alg, oalg.order);
  if (!reg.stable) {
    throw MathError("ordered representation: the order is not stable");
  }
  OrderCompatibilityReport compat =
      order_polynomial_compatible(alg, oalg.order);
  if (!compat.pass) {
    throw MathError(
        "ordered representation: the order fails translation compatibility");
  }

  std::shared_ptr<const StarDomain> domain = make_abstract_star(alg);
  const std::uint32_t g = alg.g_size;
  const std::uint32_t n = alg.n;
  OrderedRepResult out;
  std::vector<Representation> summands;
  for (Elem e = 0; e < g; ++e) {
    std::vector<char> above(g, 0);
    for (Elem x = 0; x < g; ++x) above[x] = oalg.order.test(e, x) ? 1 : 0;
    OrbitSeparation sep = orbit_separation(alg, above);
    BinaryRelation star_rel(domain->size());
    for (Elem x = 0; x < g; ++x) {
      for (Elem y = 0; y < g; ++y) {
        if (sep.relation.test(x, y)) {
          star_rel.set(domain->embed(x), domain->embed(y));
        }
      }
    }
    for (std::uint32_t slot = 0; slot < n; ++slot) {
      star_rel.set(domain->selector(slot), domain->selector(slot));
    }
    std::vector<char> kernel(domain->size(), 0);
    for (Elem x = 0; x < g; ++x) {
      if (sep.unreachable[x]) kernel[domain->embed(x)] = 1;
    }
    DeterminingPair pair{domain, std::move(star_rel), std::move(kernel)};
    out.pieces.push_back(simplest_rep(pair));
    summands.push_back(out.pieces.back().rep);
  }
  out.rep = sum_reps(summands);
  if (!verify_faithful(out.rep)) {
    throw MathError("ordered representation: the sum is not faithful");
  }
  out.induced = inclusion_preorder(out.rep);
  if (!(out.induced.rel == oalg.order)) {
    throw MathError(
        "ordered representation: the induced inclusion order differs from "
        "the input order");
  }
  return out;
}

}  // namespace menger
