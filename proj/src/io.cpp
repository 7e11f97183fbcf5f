#include "menger/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace menger {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson table_to_json(const PartialFunctionTable& f) {
  OrderedJson arr = OrderedJson::array();
  for (std::int32_t v : f.entries) {
    if (v == kUndef) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(v);
    }
  }
  return arr;
}

std::vector<Elem> parse_elem_array(const OrderedJson& arr,
                                   std::size_t expected_size,
                                   std::uint32_t bound, const char* what) {
  if (!arr.is_array() || arr.size() != expected_size) {
    throw InputError(std::string(what) + " has the wrong shape");
  }
  std::vector<Elem> out;
  out.reserve(arr.size());
  for (const OrderedJson& v : arr) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= bound) {
      throw InputError(std::string(what) + " entry out of range");
    }
    out.push_back(v.get<Elem>());
  }
  return out;
}

std::uint32_t parse_size_field(const OrderedJson& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw InputError(std::string("missing or malformed \"") + key +
                     "\" field");
  }
  std::uint64_t v = j[key].get<std::uint64_t>();
  if (v == 0 || v > 1u << 20) {
    throw InputError(std::string("\"") + key + "\" out of range");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string doc_kind_name(DocKind kind) {
  switch (kind) {
    case DocKind::kAbstract:
      return "abstract";
    case DocKind::kFunctions:
      return "functions";
    case DocKind::kOrdered:
      return "ordered";
  }
  throw InternalError("unknown document kind");
}

AlgebraDocument parse_document(const std::string& text) {
  OrderedJson j = OrderedJson::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError("document is not a JSON object");
  }
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    throw InputError("missing or malformed \"version\" field");
  }
  AlgebraDocument doc;
  doc.version = j["version"].get<int>();
  if (doc.version != 1) {
    throw InputError("unsupported document version");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw InputError("missing or malformed \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "abstract") {
    doc.kind = DocKind::kAbstract;
  } else if (kind == "functions") {
    doc.kind = DocKind::kFunctions;
  } else if (kind == "ordered") {
    doc.kind = DocKind::kOrdered;
  } else {
    throw InputError("unknown document kind \"" + kind + "\"");
  }
  if (!j.contains("n") || !j["n"].is_number_unsigned()) {
    throw InputError("missing or malformed \"n\" field");
  }
  std::uint64_t n_raw = j["n"].get<std::uint64_t>();
  if (n_raw == 0 || n_raw > 8) {
    throw InputError("\"n\" out of range");
  }
  doc.n = static_cast<std::uint32_t>(n_raw);

  if (doc.kind == DocKind::kFunctions) {
    doc.size = parse_size_field(j, "carrier_size");
    if (!j.contains("tables") || !j["tables"].is_array()) {
      throw InputError("missing or malformed \"tables\" field");
    }
    TupleIndexer idx(doc.size, doc.n);
    for (const OrderedJson& t : j["tables"]) {
      if (!t.is_array() || t.size() != idx.tuple_count()) {
        throw InputError("function table has the wrong length");
      }
      std::vector<std::int32_t> entries;
      entries.reserve(t.size());
      for (const OrderedJson& v : t) {
        if (v.is_null()) {
          entries.push_back(kUndef);
        } else if (v.is_number_unsigned() &&
                   v.get<std::uint64_t>() < doc.size) {
          entries.push_back(v.get<std::int32_t>());
        } else {
          throw InputError("function table entry out of range");
        }
      }
      doc.tables.emplace_back(doc.size, doc.n, std::move(entries));
    }
  } else {
    doc.size = parse_size_field(j, "g_size");
    if (!j.contains("super")) {
      throw InputError("missing \"super\" field");
    }
    TupleIndexer args(doc.size, doc.n + 1);
    std::vector<Elem> super = parse_elem_array(j["super"], args.tuple_count(),
                                               doc.size, "\"super\" table");
    if (!j.contains("compositions") || !j["compositions"].is_array() ||
        j["compositions"].size() != doc.n) {
      throw InputError("missing or malformed \"compositions\" field");
    }
    std::vector<std::vector<Elem>> binops;
    for (const OrderedJson& b : j["compositions"]) {
      binops.push_back(parse_elem_array(
          b, static_cast<std::size_t>(doc.size) * doc.size, doc.size,
          "composition table"));
    }
    doc.algebra = AlgebraTable(doc.size, doc.n, std::move(super),
                               std::move(binops));
    if (doc.kind == DocKind::kOrdered) {
      if (!j.contains("order") || !j["order"].is_array()) {
        throw InputError("missing or malformed \"order\" field");
      }
      doc.order = BinaryRelation(doc.size);
      for (const OrderedJson& p : j["order"]) {
        std::vector<Elem> pair =
            parse_elem_array(p, 2, doc.size, "order pair");
        doc.order.set(pair[0], pair[1]);
      }
    }
  }
  if (j.contains("selectors")) {
    doc.selectors =
        parse_elem_array(j["selectors"], doc.n, doc.size, "\"selectors\"");
  }
  return doc;
}

std::string serialize_document(const AlgebraDocument& doc) {
  OrderedJson j;
  j["version"] = doc.version;
  j["kind"] = doc_kind_name(doc.kind);
  j["n"] = doc.n;
  if (doc.kind == DocKind::kFunctions) {
    j["carrier_size"] = doc.size;
    OrderedJson tables = OrderedJson::array();
    for (const PartialFunctionTable& f : doc.tables) {
      tables.push_back(table_to_json(f));
    }
    j["tables"] = std::move(tables);
  } else {
    j["g_size"] = doc.size;
    j["super"] = doc.algebra.super;
    OrderedJson comps = OrderedJson::array();
    for (const std::vector<Elem>& b : doc.algebra.binops) comps.push_back(b);
    j["compositions"] = std::move(comps);
    if (doc.kind == DocKind::kOrdered) {
      OrderedJson pairs = OrderedJson::array();
      for (Elem x = 0; x < doc.order.size(); ++x) {
        for (Elem y = 0; y < doc.order.size(); ++y) {
          if (doc.order.test(x, y)) {
            pairs.push_back(OrderedJson::array({x, y}));
          }
        }
      }
      j["order"] = std::move(pairs);
    }
  }
  if (doc.selectors) {
    j["selectors"] = *doc.selectors;
  }
  return j.dump();
}

AlgebraDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw InputError("cannot read file: " + path);
  }
  return parse_document(buffer.str());
}

AlgebraDocument document_from_algebra(const AlgebraTable& alg) {
  AlgebraDocument doc;
  doc.kind = DocKind::kAbstract;
  doc.n = alg.n;
  doc.size = alg.g_size;
  doc.algebra = alg;
  return doc;
}

AlgebraDocument document_from_ordered(const OrderedAlgebra& oalg) {
  AlgebraDocument doc = document_from_algebra(oalg.alg);
  doc.kind = DocKind::kOrdered;
  doc.order = oalg.order;
  return doc;
}

AlgebraDocument document_from_functions(
    std::vector<PartialFunctionTable> tables) {
  AlgebraDocument doc;
  doc.kind = DocKind::kFunctions;
  if (tables.empty()) {
    throw InputError("a functions document needs at least one table");
  }
  doc.n = tables.front().arity;
  doc.size = tables.front().carrier;
  for (const PartialFunctionTable& f : tables) {
    if (f.carrier != doc.size || f.arity != doc.n) {
      throw InputError("function tables have mixed carrier or arity");
    }
  }
  doc.tables = std::move(tables);
  return doc;
}

AlgebraDocument document_from_representation(const Representation& rep) {
  return document_from_functions(rep.images);
}

AlgebraTable algebra_from_document(const AlgebraDocument& doc) {
  if (doc.kind == DocKind::kFunctions) {
    throw InputError("expected an abstract or ordered document");
  }
  return doc.algebra;
}

OrderedAlgebra ordered_from_document(const AlgebraDocument& doc) {
  if (doc.kind != DocKind::kOrdered) {
    throw InputError("expected an ordered document");
  }
  return OrderedAlgebra{doc.algebra, doc.order};
}

FunctionSet function_set_from_document(const AlgebraDocument& doc) {
  if (doc.kind != DocKind::kFunctions) {
    throw InputError("expected a functions document");
  }
  if (doc.tables.empty()) {
    throw InputError("a functions document needs at least one table");
  }
  FunctionSet fs(doc.size, doc.n);
  for (const PartialFunctionTable& f : doc.tables) {
    if (fs.contains(f)) {
      throw InputError("duplicate function table in a functions document");
    }
    fs.insert(f);
  }
  return fs;
}

}  // namespace menger
