// Compares the parallel axiom checker against the serial reference on the
// two largest desk-scale fixtures: the algebra of all 16 full binary
// functions on a 2-point carrier and the algebra of all 81 partial ones.
// Both kernels must agree exactly; timings are wall-clock.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"

namespace {

using namespace menger;

FunctionSet all_functions(std::uint32_t carrier, std::uint32_t n,
                          bool include_partial) {
  FunctionSet fs(carrier, n);
  TupleIndexer ix(carrier, n);
  std::size_t cells = ix.tuple_count();
  // Odometer over the table entries; value `carrier` encodes an undefined
  // cell when partial tables are requested.
  std::uint32_t radix = carrier + (include_partial ? 1 : 0);
  std::vector<std::uint32_t> digits(cells, 0);
  while (true) {
    PartialFunctionTable table = PartialFunctionTable::empty(carrier, n);
    for (std::size_t c = 0; c < cells; ++c) {
      if (digits[c] < carrier) table.entries[c] = static_cast<Elem>(digits[c]);
    }
    fs.insert(table);
    std::size_t k = cells;
    while (k > 0) {
      --k;
      if (++digits[k] < radix) break;
      digits[k] = 0;
      if (k == 0) return fs;
    }
  }
}

double run_ms(const AlgebraTable& alg, bool serial, int repeats,
              AxiomsReport& out) {
  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) {
    out = serial ? check_axioms_serial(alg) : check_axioms(alg);
  }
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         repeats;
}

void bench(const std::string& label, const FunctionSet& fs, int repeats) {
  FunctionAlgebra fa = algebra_from_functions(fs, fs.size() + 1);
  AxiomsReport parallel_report;
  AxiomsReport serial_report;
  double parallel_ms = run_ms(fa.alg, false, repeats, parallel_report);
  double serial_ms = run_ms(fa.alg, true, repeats, serial_report);
  bool agree = parallel_report.pass() == serial_report.pass() &&
               parallel_report.superassociative ==
                   serial_report.superassociative &&
               parallel_report.associative == serial_report.associative;
  std::cout << label << ": elements=" << fa.alg.g_size
            << " parallel=" << parallel_ms << "ms serial=" << serial_ms
            << "ms agree=" << (agree ? "yes" : "NO") << " pass="
            << (parallel_report.pass() ? "yes" : "no") << "\n";
  if (!agree) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  if (repeats < 1) repeats = 1;
  bench("full binary tables m=2", all_functions(2, 2, false), repeats);
  bench("partial binary tables m=2", all_functions(2, 2, true), repeats);
  return 0;
}
