// mengerkit: check, represent, decompose, enumerate, and random commands
// over the shared algebra document format.  Reports are single-line JSON
// with stable field order; exit codes are 0 (all required checks pass),
// 1 (a mathematical check failed), 2 (malformed input or usage).

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <algorithm>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/enumerate.hpp"
#include "menger/io.hpp"
#include "menger/nfun.hpp"
#include "menger/relations.hpp"
#include "menger/represent.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace menger;

std::size_t closure_cap() {
  const char* raw = std::getenv("MENGERKIT_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultCap;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) {
    throw InputError("MENGERKIT_CAP must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

Json args_json(const std::vector<Elem>& args) {
  Json out = Json::array();
  for (Elem a : args) out.push_back(a);
  return out;
}

// One entry of the "checks" array.  A check that fails and is required
// turns the report's overall verdict (and the exit code) to failure.
struct CheckList {
  Json entries = Json::array();
  bool required_pass = true;

  void add(const std::string& name, bool pass, bool required,
           std::optional<std::vector<Elem>> counterexample = std::nullopt,
           std::string detail = "") {
    Json entry;
    entry["name"] = name;
    entry["pass"] = pass;
    entry["required"] = required;
    if (counterexample) entry["counterexample"] = args_json(*counterexample);
    if (!detail.empty()) entry["detail"] = detail;
    entries.push_back(std::move(entry));
    if (required && !pass) required_pass = false;
  }
};

Json report_shell(const std::string& command, Json input) {
  Json report;
  report["version"] = 1;
  report["tool"] = "mengerkit";
  report["command"] = command;
  report["input"] = std::move(input);
  return report;
}

int emit_report(Json report, CheckList checks, Json artifacts) {
  report["checks"] = std::move(checks.entries);
  report["artifacts"] = std::move(artifacts);
  report["pass"] = checks.required_pass;
  std::cout << report.dump() << "\n";
  return checks.required_pass ? 0 : 1;
}

Json document_json(const AlgebraDocument& doc) {
  return Json::parse(serialize_document(doc));
}

void add_axiom_checks(CheckList& checks, const AxiomsReport& ax) {
  for (std::size_t i = 0; i < ax.associative.size(); ++i) {
    std::optional<std::vector<Elem>> witness;
    if (ax.assoc_failure[i]) witness = ax.assoc_failure[i]->args;
    checks.add("composition_" + std::to_string(i) + "_associative",
               ax.associative[i] != 0, true, witness);
  }
  std::optional<std::vector<Elem>> witness;
  if (ax.superassoc_failure) witness = ax.superassoc_failure->args;
  checks.add("superassociative", ax.superassociative, true, witness);
}

void add_representability_checks(CheckList& checks,
                                 const RepresentabilityReport& rep) {
  std::optional<std::vector<Elem>> left;
  if (rep.left_failure) left = rep.left_failure->args;
  checks.add("left_composition_law", rep.left_composition_law, true, left);

  std::optional<std::vector<Elem>> right;
  if (rep.right_failure) right = rep.right_failure->args;
  checks.add("right_composition_law", rep.right_composition_law, true, right);

  std::optional<std::vector<Elem>> covering;
  std::string covering_detail;
  if (rep.covering_failure_word) {
    covering = std::vector<Elem>{};
    for (const WordLetter& letter : *rep.covering_failure_word) {
      covering->push_back(static_cast<Elem>(letter.slot));
      covering->push_back(letter.elem);
    }
    if (rep.covering_failure_elem) covering->push_back(*rep.covering_failure_elem);
    covering_detail = "witness lists (slot, element) letters then the acted element";
  }
  checks.add("covering_word_law", rep.covering_word_law, true, covering,
             covering_detail);

  std::optional<std::vector<Elem>> determinacy;
  std::string determinacy_detail;
  if (rep.determinacy_failure) {
    determinacy = std::vector<Elem>{};
    for (const CompositionWord* word : {&rep.determinacy_failure->first,
                                        &rep.determinacy_failure->second}) {
      for (const WordLetter& letter : *word) {
        determinacy->push_back(static_cast<Elem>(letter.slot));
        determinacy->push_back(letter.elem);
      }
      determinacy->push_back(static_cast<Elem>(-1));
    }
    determinacy_detail =
        "two words with equal slot states, (slot, element) letters separated "
        "by the sentinel";
  }
  checks.add("slot_determinacy", rep.slot_determinacy, true, determinacy,
             determinacy_detail);
}

void add_selector_info(CheckList& checks, Json& artifacts,
                       const AlgebraTable& alg,
                       const std::optional<std::vector<Elem>>& annotated) {
  std::optional<SelectorSet> sel = find_selectors(alg);
  checks.add("selectors_exist", sel.has_value(), false, std::nullopt,
             sel ? "" : "no selector tuple; general representation still applies");
  if (sel) artifacts["selectors"] = args_json(sel->elems);
  if (annotated) {
    bool match = sel.has_value() && sel->elems == *annotated;
    checks.add("selectors_annotation", match, true,
               match ? std::nullopt : std::make_optional(*annotated));
  }
}

int cmd_check(const std::string& path) {
  AlgebraDocument doc = load_document(path);
  Json report = report_shell("check", path);
  report["kind"] = doc_kind_name(doc.kind);
  CheckList checks;
  Json artifacts = Json::object();

  if (doc.kind == DocKind::kFunctions) {
    FunctionSet fs = function_set_from_document(doc);
    FunctionSet closed = close_under_operations(fs, closure_cap());
    checks.add("closed", closed.size() == fs.size(), false, std::nullopt,
               closed.size() == fs.size()
                   ? ""
                   : "closure adds " + std::to_string(closed.size() - fs.size()) +
                         " tables; checks below use the closure");
    FunctionAlgebra fa = algebra_from_functions(fs, closure_cap());
    artifacts["closure_size"] = fa.closure.size();
    add_axiom_checks(checks, check_axioms(fa.alg));
    add_representability_checks(checks, check_representability(fa.alg));
    add_selector_info(checks, artifacts, fa.alg, doc.selectors);
  } else {
    AlgebraTable alg = doc.algebra;
    add_axiom_checks(checks, check_axioms(alg));
    add_representability_checks(checks, check_representability(alg));
    add_selector_info(checks, artifacts, alg, doc.selectors);
    if (doc.kind == DocKind::kOrdered) {
      const BinaryRelation& zeta = doc.order;
      checks.add("order_reflexive", zeta.is_reflexive(), true);
      checks.add("order_transitive", zeta.is_transitive(), true);
      checks.add("order_antisymmetric", zeta.is_antisymmetric(), true);
      RegularityReport reg = relation_properties(alg, zeta);
      std::optional<std::vector<Elem>> stable_witness;
      std::string stable_detail;
      if (reg.stable_failure) {
        stable_witness = reg.stable_failure->args;
        stable_detail = reg.stable_failure->clause;
      }
      checks.add("order_stable", reg.stable, true, stable_witness,
                 stable_detail);
      OrderCompatibilityReport compat = order_polynomial_compatible(alg, zeta);
      std::optional<std::vector<Elem>> compat_witness;
      std::string compat_detail;
      if (compat.failure) {
        compat_witness = compat.failure->args;
        compat_detail = compat.failure->clause;
      }
      checks.add("order_translation_compatible", compat.pass, true,
                 compat_witness, compat_detail);
    }
  }
  return emit_report(std::move(report), std::move(checks),
                     std::move(artifacts));
}

int cmd_represent(const std::string& path, const std::string& method,
                  bool complete, bool extend) {
  AlgebraDocument doc = load_document(path);
  if (doc.kind == DocKind::kFunctions) {
    throw InputError("represent expects an abstract or ordered document");
  }
  if (method == "ordered" && doc.kind != DocKind::kOrdered) {
    throw InputError("--method ordered requires an ordered document");
  }

  Json report = report_shell("represent", path);
  report["method"] = method;
  CheckList checks;
  Json artifacts = Json::object();

  Representation rep;
  if (method == "unitary") {
    rep = represent_unitary(doc.algebra);
  } else if (method == "general") {
    rep = represent_general(doc.algebra);
  } else {
    OrderedRepResult ordered = represent_ordered({doc.algebra, doc.order});
    rep = std::move(ordered.rep);
    checks.add("induced_order_matches", true, true);
  }

  checks.add("verified", verify_representation(rep).pass(), true);
  checks.add("faithful", verify_faithful(rep), method != "unitary");
  artifacts["carrier_size"] = rep.carrier;
  artifacts["representation"] = document_json(document_from_representation(rep));

  if (complete) {
    rep = complete_representation(rep);
    checks.add("completed_verified", verify_representation(rep).pass(), true);
    artifacts["completed"] = document_json(document_from_representation(rep));
  }
  if (extend) {
    FunctionSet images(rep.carrier, rep.source.n);
    for (const PartialFunctionTable& table : rep.images) images.insert(table);
    ExtensionLevels ext = unitary_extension(images, closure_cap());
    bool contains = true;
    for (const PartialFunctionTable& table : rep.images) {
      if (!ext.closure.find(table)) contains = false;
    }
    checks.add("extension_contains_images", contains, true);
    Json levels = Json::array();
    for (std::size_t end : ext.level_ends) levels.push_back(end);
    artifacts["extension"] =
        document_json(document_from_functions(ext.closure.items()));
    artifacts["extension_level_ends"] = std::move(levels);
    artifacts["extension_fixed_level"] = ext.fixed_level;
  }
  return emit_report(std::move(report), std::move(checks),
                     std::move(artifacts));
}

int cmd_decompose(const std::string& algebra_path,
                  const std::string& rep_path) {
  AlgebraDocument alg_doc = load_document(algebra_path);
  if (alg_doc.kind == DocKind::kFunctions) {
    throw InputError("decompose expects an abstract or ordered algebra");
  }
  AlgebraDocument rep_doc = load_document(rep_path);
  if (rep_doc.kind != DocKind::kFunctions) {
    throw InputError("decompose expects a functions-kind representation");
  }
  const AlgebraTable& alg = alg_doc.algebra;
  if (rep_doc.tables.size() != alg.g_size) {
    throw InputError("representation must list one image per element");
  }
  if (rep_doc.n != alg.n) {
    throw InputError("representation arity differs from the algebra");
  }

  Representation rep;
  rep.source = alg;
  rep.carrier = rep_doc.size;
  rep.images = rep_doc.tables;
  rep.kind = RepKind::kCustom;

  Json report = report_shell(
      "decompose", Json::array({algebra_path, rep_path}));
  CheckList checks;
  Json artifacts = Json::object();

  RepVerifyReport verify = verify_representation(rep);
  std::optional<std::vector<Elem>> witness;
  if (verify.super_failure) witness = verify.super_failure->args;
  for (const std::optional<IdentityFailure>& failure : verify.mann_failure) {
    if (!witness && failure) witness = failure->args;
  }
  checks.add("representation_verified", verify.pass(), true, witness);
  if (!verify.pass()) {
    return emit_report(std::move(report), std::move(checks),
                       std::move(artifacts));
  }

  Decomposition dec = decompose_rep(alg, rep, closure_cap());
  checks.add("union_matches", dec.union_matches, true, std::nullopt,
             dec.union_detail);
  artifacts["universe_size"] = dec.universe.size();
  artifacts["piece_count"] = dec.pieces.size();
  Json pieces = Json::array();
  for (const DecompositionPiece& piece : dec.pieces) {
    Json entry;
    entry["tuple"] = args_json(piece.tuple);
    entry["class_count"] = piece.simple.classes.classes.size();
    entry["kernel_empty"] = std::none_of(
        piece.pair.kernel.begin(), piece.pair.kernel.end(),
        [](char c) { return c != 0; });
    entry["document"] =
        document_json(document_from_representation(piece.on_carrier));
    pieces.push_back(std::move(entry));
  }
  artifacts["pieces"] = std::move(pieces);
  artifacts["union"] = document_json(document_from_representation(dec.union_rep));
  return emit_report(std::move(report), std::move(checks),
                     std::move(artifacts));
}

int cmd_enumerate(const std::string& mode, std::uint32_t n,
                  std::optional<std::uint32_t> g_size,
                  std::optional<std::uint32_t> carrier, std::size_t limit,
                  bool reduce, bool projectors) {
  if (mode == "abstract") {
    if (!g_size) throw InputError("--mode abstract requires --gsize");
    if (projectors) {
      throw InputError("--projectors applies to --mode functions only");
    }
    std::vector<AlgebraTable> found =
        enumerate_abstract(*g_size, n, reduce ? 0 : limit);
    if (reduce) found = reduce_isomorphic(found);
    if (limit != 0 && found.size() > limit) found.resize(limit);
    for (const AlgebraTable& alg : found) {
      std::cout << serialize_document(document_from_algebra(alg)) << "\n";
    }
    return 0;
  }
  if (mode == "functions") {
    if (!carrier) throw InputError("--mode functions requires --carrier");
    if (reduce) {
      throw InputError("--reduce applies to --mode abstract only");
    }
    std::vector<FunctionSet> found =
        enumerate_function_algebras(*carrier, n, projectors, limit);
    for (const FunctionSet& fs : found) {
      std::cout << serialize_document(document_from_functions(fs.items()))
                << "\n";
    }
    return 0;
  }
  throw InputError("unknown enumeration mode: " + mode);
}

int cmd_random(std::uint64_t seed, std::uint32_t g_size, std::uint32_t n) {
  AlgebraTable alg = random_algebra(seed, g_size, n);
  std::cout << serialize_document(document_from_algebra(alg)) << "\n";
  return 0;
}

int emit_error(const std::string& command, const std::string& type,
               const std::string& message, int code) {
  Json report;
  report["version"] = 1;
  report["tool"] = "mengerkit";
  report["command"] = command;
  report["error"] = Json{{"type", type}, {"message", message}};
  std::cout << report.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Menger algebras of partial n-place functions"};
  app.require_subcommand(1);

  std::string check_path;
  CLI::App* check = app.add_subcommand(
      "check", "Verify the axioms and representability conditions of a document");
  check->add_option("path", check_path, "algebra document")->required();

  std::string represent_path;
  std::string method = "general";
  bool complete = false;
  bool extend = false;
  CLI::App* represent = app.add_subcommand(
      "represent", "Build a verified representation by partial functions");
  represent->add_option("path", represent_path, "algebra document")->required();
  represent->add_option("--method", method, "unitary, general, or ordered")
      ->check(CLI::IsMember({"unitary", "general", "ordered"}));
  represent->add_flag("--complete", complete,
                      "complete the images by a shared new point");
  represent->add_flag("--extend", extend,
                      "close the images with the projectors (full images only)");

  std::string decompose_alg;
  std::string decompose_rep_path;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "Split a representation into simplest representations");
  decompose->add_option("algebra", decompose_alg, "algebra document")
      ->required();
  decompose->add_option("representation", decompose_rep_path,
                        "functions-kind image list")
      ->required();

  std::string mode;
  std::uint32_t enum_n = 0;
  std::optional<std::uint32_t> g_size;
  std::optional<std::uint32_t> carrier;
  std::size_t limit = 0;
  bool reduce = false;
  bool projectors = false;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "Stream every algebra of the given shape, one per line");
  enumerate->add_option("--mode", mode, "abstract or functions")
      ->required()
      ->check(CLI::IsMember({"abstract", "functions"}));
  enumerate->add_option("--n", enum_n, "operation arity")->required();
  enumerate->add_option("--gsize", g_size, "element count (abstract mode)");
  enumerate->add_option("--carrier", carrier, "carrier size (functions mode)");
  enumerate->add_option("--limit", limit, "emit at most this many (0 = all)");
  enumerate->add_flag("--reduce", reduce,
                      "keep one representative per relabeling class");
  enumerate->add_flag("--projectors", projectors,
                      "functions mode: require every projector");

  std::uint64_t seed = 0;
  std::uint32_t random_g = 2;
  std::uint32_t random_n = 2;
  CLI::App* random = app.add_subcommand(
      "random", "Seed-deterministic random representable algebra");
  random->add_option("--seed", seed, "generator seed");
  random->add_option("--gsize", random_g, "element count");
  random->add_option("--n", random_n, "operation arity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (check->parsed()) return cmd_check(check_path);
    if (represent->parsed()) {
      return cmd_represent(represent_path, method, complete, extend);
    }
    if (decompose->parsed()) {
      return cmd_decompose(decompose_alg, decompose_rep_path);
    }
    if (enumerate->parsed()) {
      return cmd_enumerate(mode, enum_n, g_size, carrier, limit, reduce,
                           projectors);
    }
    return cmd_random(seed, random_g, random_n);
  } catch (const InputError& e) {
    return emit_error(command, "input", e.what(), 2);
  } catch (const CapError& e) {
    return emit_error(command, "cap", e.what(), 1);
  } catch (const ConflictError& e) {
    return emit_error(command, "conflict", e.what(), 1);
  } catch (const MathError& e) {
    return emit_error(command, "math", e.what(), 1);
  } catch (const std::exception& e) {
    return emit_error(command, "internal", e.what(), 1);
  }
}
