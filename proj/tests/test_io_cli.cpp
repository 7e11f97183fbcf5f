// Document parsing and serialization, the exhaustive enumerators (with an
// independent brute-force cross-check), random generation, and the command
// line binary exercised as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/enumerate.hpp"
#include "menger/io.hpp"
#include "menger/nfun.hpp"
#include "menger/relations.hpp"
#include "oracles.hpp"

using namespace menger;
using oracles::table;

namespace {

FunctionAlgebra projector_algebra() {
  FunctionSet fs(2, 2);
  fs.insert(table(2, 2, "0011"));
  fs.insert(table(2, 2, "0101"));
  return algebra_from_functions(fs);
}

std::string getenv_or_skip(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return {};
  return value;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed binary through the shell and captures stdout.
CliResult run_cli(const std::string& args) {
  std::string bin = getenv_or_skip("MENGERKIT_BIN");
  REQUIRE_FALSE(bin.empty());
  CliResult result;
  std::string command = bin + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) {
  std::string dir = getenv_or_skip("MENGERKIT_FIXTURES");
  REQUIRE_FALSE(dir.empty());
  return dir + "/" + name;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_CASE("abstract document round-trip") {
  FunctionAlgebra fa = projector_algebra();
  AlgebraDocument doc = document_from_algebra(fa.alg);
  AlgebraDocument back = parse_document(serialize_document(doc));
  CHECK(back == doc);
  CHECK(algebra_from_document(back) == fa.alg);
  CHECK(serialize_document(back) == serialize_document(doc));
}

TEST_CASE("functions document round-trip keeps undefined cells") {
  std::vector<PartialFunctionTable> tables{table(2, 2, "01--"),
                                           table(2, 2, "0110")};
  AlgebraDocument doc = document_from_functions(tables);
  AlgebraDocument back = parse_document(serialize_document(doc));
  CHECK(back == doc);
  CHECK(back.tables == tables);
  std::string text = serialize_document(doc);
  CHECK(text.find("null") != std::string::npos);
}

TEST_CASE("ordered document round-trip") {
  FunctionAlgebra fa = projector_algebra();
  BinaryRelation order(2);
  order.set(0, 0);
  order.set(1, 1);
  AlgebraDocument doc = document_from_ordered({fa.alg, order});
  AlgebraDocument back = parse_document(serialize_document(doc));
  CHECK(back == doc);
  OrderedAlgebra oalg = ordered_from_document(back);
  CHECK(oalg.alg == fa.alg);
  CHECK(oalg.order == order);
}

TEST_CASE("parse rejects malformed documents") {
  CHECK_THROWS_AS(parse_document("not json at all"), InputError);
  CHECK_THROWS_AS(parse_document("[1,2,3]"), InputError);
  CHECK_THROWS_AS(parse_document("{\"kind\":\"abstract\"}"), InputError);
  CHECK_THROWS_AS(
      parse_document("{\"version\":2,\"kind\":\"abstract\",\"n\":2,"
                     "\"g_size\":1,\"super\":[0],\"compositions\":[[0],[0]]}"),
      InputError);
  CHECK_THROWS_AS(
      parse_document("{\"version\":1,\"kind\":\"nonsense\",\"n\":2,"
                     "\"g_size\":1,\"super\":[0],\"compositions\":[[0],[0]]}"),
      InputError);
  // Null entries are only allowed in function tables.
  CHECK_THROWS_AS(
      parse_document("{\"version\":1,\"kind\":\"abstract\",\"n\":2,"
                     "\"g_size\":1,\"super\":[null],\"compositions\":"
                     "[[0],[0]]}"),
      InputError);
  // Out-of-range entry.
  CHECK_THROWS_AS(
      parse_document("{\"version\":1,\"kind\":\"abstract\",\"n\":2,"
                     "\"g_size\":1,\"super\":[1],\"compositions\":[[0],[0]]}"),
      InputError);
}

TEST_CASE("typed extraction rejects kind mismatches and duplicates") {
  FunctionAlgebra fa = projector_algebra();
  AlgebraDocument fun_doc =
      document_from_functions({table(2, 2, "0011"), table(2, 2, "0011")});
  CHECK_THROWS_AS(algebra_from_document(fun_doc), InputError);
  CHECK_THROWS_AS(function_set_from_document(fun_doc), InputError);
  AlgebraDocument abs_doc = document_from_algebra(fa.alg);
  CHECK_THROWS_AS(function_set_from_document(abs_doc), InputError);
  CHECK_THROWS_AS(ordered_from_document(abs_doc), InputError);
}

TEST_CASE("associative binary operation counts") {
  CHECK(associative_binops(1).size() == 1);
  CHECK(associative_binops(2).size() == 8);
  CHECK(associative_binops(3).size() == 113);
}

TEST_CASE("abstract enumeration counts and determinism") {
  std::vector<AlgebraTable> one = enumerate_abstract(1, 2);
  CHECK(one.size() == 1);

  std::vector<AlgebraTable> g2 = enumerate_abstract(2, 2);
  CHECK(g2.size() == 67);
  std::vector<AlgebraTable> again = enumerate_abstract(2, 2);
  CHECK(g2 == again);

  std::vector<AlgebraTable> limited = enumerate_abstract(2, 2, 5);
  REQUIRE(limited.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(limited[k] == g2[k]);

  // Sorted by the concatenated tables, strictly increasing (duplicate-free).
  auto key = [](const AlgebraTable& alg) {
    std::vector<Elem> flat = alg.super;
    for (const auto& b : alg.binops) flat.insert(flat.end(), b.begin(), b.end());
    return flat;
  };
  for (std::size_t k = 1; k < g2.size(); ++k) {
    CHECK(key(g2[k - 1]) < key(g2[k]));
  }
}

TEST_CASE("abstract enumeration matches a direct brute-force scan") {
  // Independent oracle: try every pair of associative compositions with
  // every superposition table and keep what passes both check families.
  std::vector<std::vector<Elem>> assoc = associative_binops(2);
  REQUIRE(assoc.size() == 8);
  std::vector<AlgebraTable> expected;
  for (const std::vector<Elem>& b0 : assoc) {
    for (const std::vector<Elem>& b1 : assoc) {
      std::vector<Elem> super(8, 0);
      while (true) {
        AlgebraTable alg(2, 2, super, {b0, b1});
        if (check_axioms_serial(alg).pass() &&
            check_representability(alg).pass()) {
          expected.push_back(alg);
        }
        std::size_t k = super.size();
        bool carried = true;
        while (k > 0) {
          --k;
          if (++super[k] < 2) { carried = false; break; }
          super[k] = 0;
        }
        if (carried) break;
      }
    }
  }
  auto key = [](const AlgebraTable& alg) {
    std::vector<Elem> flat = alg.super;
    for (const auto& b : alg.binops) flat.insert(flat.end(), b.begin(), b.end());
    return flat;
  };
  std::sort(expected.begin(), expected.end(),
            [&](const AlgebraTable& a, const AlgebraTable& b) {
              return key(a) < key(b);
            });
  std::vector<AlgebraTable> found = enumerate_abstract(2, 2);
  CHECK(found == expected);
}

TEST_CASE("function algebra enumeration counts") {
  std::vector<FunctionSet> all = enumerate_function_algebras(2, 2);
  CHECK(all.size() == 57);
  std::vector<FunctionSet> with_projectors =
      enumerate_function_algebras(2, 2, true);
  CHECK(with_projectors.size() == 26);

  // Size histogram of the closed subsets.
  std::map<std::size_t, std::size_t> histogram;
  for (const FunctionSet& fs : all) ++histogram[fs.size()];
  std::map<std::size_t, std::size_t> expected{{1, 6}, {2, 14}, {3, 10},
                                              {4, 15}, {5, 4},  {6, 4},
                                              {8, 3},  {16, 1}};
  CHECK(histogram == expected);

  // Every member set is genuinely closed and every table is full.
  for (const FunctionSet& fs : all) {
    CHECK(close_under_operations(fs, 32).size() == fs.size());
    for (const PartialFunctionTable& t : fs.items()) CHECK(t.is_full());
  }
}

TEST_CASE("isomorphism reduction") {
  std::vector<AlgebraTable> g2 = enumerate_abstract(2, 2);
  std::vector<AlgebraTable> reduced = reduce_isomorphic(g2);
  CHECK(reduced.size() == 36);
  // Every representative is a member of the original list.
  for (const AlgebraTable& alg : reduced) {
    CHECK(std::find(g2.begin(), g2.end(), alg) != g2.end());
  }
}

TEST_CASE("random algebras are seed-deterministic") {
  AlgebraTable a = random_algebra(0, 2, 2);
  AlgebraTable b = random_algebra(0, 2, 2);
  CHECK(a == b);
  CHECK(check_axioms(a).pass());
  CHECK(check_representability(a).pass());

  AlgebraTable c = random_algebra(1, 2, 2);
  CHECK_FALSE(a == c);

  AlgebraTable g3 = random_algebra(42, 3, 2);
  CHECK(g3.g_size == 3);
  CHECK(check_representability(g3).pass());
}

TEST_CASE("cli: check passes on well-formed fixtures") {
  for (const char* name :
       {"g2_abstract.json", "g2_functions.json", "partial3_ordered.json"}) {
    CliResult result = run_cli("check " + fixture(name));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("\"pass\":true") != std::string::npos);
  }
}

TEST_CASE("cli: check fails with a counterexample on a corrupted table") {
  CliResult result = run_cli("check " + fixture("corrupted.json"));
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("\"counterexample\":[0,0,0]") != std::string::npos);
  CHECK(result.output.find("\"pass\":false") != std::string::npos);
}

TEST_CASE("cli: check rejects malformed input") {
  CliResult result = run_cli("check " + fixture("malformed.json"));
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("\"type\":\"input\"") != std::string::npos);
  CHECK(run_cli("check /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("cli: represent methods") {
  CliResult unitary =
      run_cli("represent " + fixture("g2_abstract.json") + " --method unitary");
  CHECK(unitary.exit_code == 0);
  CHECK(unitary.output.find("\"tables\":[[0,0,1,1],[0,1,0,1]]") !=
        std::string::npos);

  CliResult general =
      run_cli("represent " + fixture("g2_abstract.json") + " --method general");
  CHECK(general.exit_code == 0);
  CHECK(general.output.find("\"carrier_size\":4") != std::string::npos);

  CliResult ordered = run_cli("represent " + fixture("partial3_ordered.json") +
                              " --method ordered");
  CHECK(ordered.exit_code == 0);
  CHECK(ordered.output.find("\"induced_order_matches\",\"pass\":true") !=
        std::string::npos);

  // No selectors: the translation method fails mathematically.
  CliResult no_sel = run_cli("represent " + fixture("partial3_abstract.json") +
                             " --method unitary");
  CHECK(no_sel.exit_code == 1);
  CHECK(no_sel.output.find("\"type\":\"math\"") != std::string::npos);

  // The full pipeline: represent, complete, extend.
  CliResult pipeline =
      run_cli("represent " + fixture("g2_abstract.json") +
              " --method unitary --complete --extend");
  CHECK(pipeline.exit_code == 0);
  CHECK(pipeline.output.find("\"extension_fixed_level\":0") !=
        std::string::npos);

  // Extension of partial images is an input error.
  CliResult partial = run_cli("represent " + fixture("partial3_abstract.json") +
                              " --method general --extend");
  CHECK(partial.exit_code == 2);
}

TEST_CASE("cli: decompose") {
  CliResult result = run_cli("decompose " + fixture("g2_abstract.json") + " " +
                             fixture("g2_functions.json"));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("\"piece_count\":4") != std::string::npos);
  CHECK(result.output.find("\"union_matches\",\"pass\":true") !=
        std::string::npos);

  CliResult one = run_cli("decompose " + fixture("one_element.json") + " " +
                          fixture("one_element_rep.json"));
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("\"piece_count\":1") != std::string::npos);
}

TEST_CASE("cli: decompose respects the closure cap variable") {
  std::string bin = getenv_or_skip("MENGERKIT_BIN");
  REQUIRE_FALSE(bin.empty());
  std::string command = "MENGERKIT_CAP=3 " + bin + " decompose " +
                        fixture("g2_abstract.json") + " " +
                        fixture("g2_functions.json") + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("cli: enumerate counts, determinism, and usage errors") {
  CliResult g1 = run_cli("enumerate --mode abstract --gsize 1 --n 2");
  CHECK(g1.exit_code == 0);
  CHECK(count_lines(g1.output) == 1);

  CliResult g2 = run_cli("enumerate --mode abstract --gsize 2 --n 2");
  CHECK(count_lines(g2.output) == 67);
  CliResult g2_again = run_cli("enumerate --mode abstract --gsize 2 --n 2");
  CHECK(g2.output == g2_again.output);

  CliResult reduced =
      run_cli("enumerate --mode abstract --gsize 2 --n 2 --reduce");
  CHECK(count_lines(reduced.output) == 36);

  CliResult funs = run_cli("enumerate --mode functions --carrier 2 --n 2");
  CHECK(count_lines(funs.output) == 57);
  CliResult projs =
      run_cli("enumerate --mode functions --carrier 2 --n 2 --projectors");
  CHECK(count_lines(projs.output) == 26);

  CliResult limited =
      run_cli("enumerate --mode functions --carrier 2 --n 2 --limit 10");
  CHECK(count_lines(limited.output) == 10);

  CHECK(run_cli("enumerate --mode abstract --n 2").exit_code == 2);
  CHECK(run_cli("enumerate --mode functions --n 2").exit_code == 2);
  CHECK(run_cli("enumerate --mode abstract --gsize 2 --n 2 --projectors")
            .exit_code == 2);
}

TEST_CASE("cli: every enumerated document parses and round-trips") {
  CliResult funs = run_cli("enumerate --mode functions --carrier 2 --n 2");
  std::size_t start = 0;
  std::size_t checked = 0;
  while (start < funs.output.size()) {
    std::size_t end = funs.output.find('\n', start);
    if (end == std::string::npos) break;
    std::string line = funs.output.substr(start, end - start);
    AlgebraDocument doc = parse_document(line);
    CHECK(serialize_document(doc) == line);
    ++checked;
    start = end + 1;
  }
  CHECK(checked == 57);
}

TEST_CASE("cli: random is reproducible and validates") {
  CliResult first = run_cli("random --seed 11 --gsize 2 --n 2");
  CliResult second = run_cli("random --seed 11 --gsize 2 --n 2");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output != run_cli("random --seed 12 --gsize 2 --n 2").output);

  // The emitted document parses and passes every required check.
  AlgebraDocument doc =
      parse_document(first.output.substr(0, first.output.size() - 1));
  AlgebraTable alg = algebra_from_document(doc);
  CHECK(check_axioms(alg).pass());
  CHECK(check_representability(alg).pass());
}
