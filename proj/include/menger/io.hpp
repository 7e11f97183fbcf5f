#pragma once

// One self-describing JSON document format for algebras, function sets,
// ordered algebras, and representation payloads, plus typed extraction.
// Field order is stable and serialization is byte-deterministic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "menger/algebra.hpp"
#include "menger/core.hpp"
#include "menger/nfun.hpp"
#include "menger/relations.hpp"
#include "menger/represent.hpp"

namespace menger {

enum class DocKind { kAbstract, kFunctions, kOrdered };

std::string doc_kind_name(DocKind kind);

// A parsed document.  `size` is the element count (g_size) for abstract and
// ordered kinds and the carrier size for the functions kind.  Function
// tables may repeat (representation payloads of non-faithful
// representations); typed extraction to a FunctionSet rejects duplicates.
struct AlgebraDocument {
  int version = 1;
  DocKind kind = DocKind::kAbstract;
  std::uint32_t n = 0;
  std::uint32_t size = 0;
  AlgebraTable algebra;                       // abstract and ordered kinds
  std::vector<PartialFunctionTable> tables;   // functions kind
  BinaryRelation order;                       // ordered kind
  std::optional<std::vector<Elem>> selectors; // optional annotation

  bool operator==(const AlgebraDocument& other) const = default;
};

// Parses a document from JSON text.  Unknown fields are ignored; missing or
// malformed required fields, out-of-range entries, and null entries in
// abstract tables raise InputError.
AlgebraDocument parse_document(const std::string& text);

// Compact single-line JSON with stable field order.
std::string serialize_document(const AlgebraDocument& doc);

// Reads and parses a file (InputError on IO failure).
AlgebraDocument load_document(const std::string& path);

AlgebraDocument document_from_algebra(const AlgebraTable& alg);
AlgebraDocument document_from_ordered(const OrderedAlgebra& oalg);
AlgebraDocument document_from_functions(
    std::vector<PartialFunctionTable> tables);
// Functions-kind payload of the images in element order (duplicates kept).
AlgebraDocument document_from_representation(const Representation& rep);

// Typed extraction; each checks the document kind and invariants.
AlgebraTable algebra_from_document(const AlgebraDocument& doc);
OrderedAlgebra ordered_from_document(const AlgebraDocument& doc);
FunctionSet function_set_from_document(const AlgebraDocument& doc);

}  // namespace menger
