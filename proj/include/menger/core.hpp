#pragma once

// Shared basics: element indices, flat row-major tuple indexing over a finite
// carrier, bit-matrix binary relations, and the error taxonomy.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace menger {

// Index of an element of a finite carrier or algebra.
using Elem = std::uint32_t;

inline constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

// Default size cap for closure computations.  Every closure-producing
// operation takes an explicit cap parameter; this is the fallback.
inline constexpr std::size_t kDefaultCap = 512;

// Invalid or malformed input (bad documents, dimension mismatches,
// out-of-range indices, unusable parameters).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical check failed where success was required (failed
// preconditions of a construction, violated assertions of a verified
// property, conflicting unions).
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closure grew past its size cap.
struct CapError : MathError {
  using MathError::MathError;
};

// Two structurally incompatible values were merged (e.g. union of partial
// functions disagreeing on a shared tuple).
struct ConflictError : MathError {
  using MathError::MathError;
};

// Internal consistency violation: something that must be impossible by
// construction happened anyway.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Row-major indexing of n-tuples over a carrier of size m: the flat index of
// (a_1, ..., a_n) is sum a_k * m^(n-k), so a_1 is the most significant digit.
class TupleIndexer {
 public:
  TupleIndexer(std::uint32_t carrier_size, std::uint32_t arity)
      : m_(carrier_size), n_(arity) {
    if (m_ == 0) throw InputError("carrier size must be positive");
    if (n_ == 0) throw InputError("arity must be positive");
    pow_.resize(n_ + 1);
    pow_[n_] = 1;
    for (std::uint32_t k = n_; k > 0; --k) {
      pow_[k - 1] = pow_[k] * m_;
      if (pow_[k - 1] / m_ != pow_[k])
        throw InputError("tuple space too large to index");
    }
  }

  std::uint32_t carrier_size() const { return m_; }
  std::uint32_t arity() const { return n_; }
  std::size_t tuple_count() const { return pow_[0]; }

  std::size_t index(std::span<const Elem> tuple) const {
    std::size_t idx = 0;
    for (std::uint32_t k = 0; k < n_; ++k) idx += tuple[k] * pow_[k + 1];
    return idx;
  }

  std::vector<Elem> decode(std::size_t flat) const {
    std::vector<Elem> tuple(n_);
    for (std::uint32_t k = 0; k < n_; ++k) {
      tuple[k] = static_cast<Elem>(flat / pow_[k + 1]);
      flat %= pow_[k + 1];
    }
    return tuple;
  }

  // Coordinate k (0-based) of the tuple with the given flat index.
  Elem coordinate(std::size_t flat, std::uint32_t k) const {
    return static_cast<Elem>((flat / pow_[k + 1]) % m_);
  }

  // Flat index with coordinate k replaced by value.
  std::size_t with_coordinate(std::size_t flat, std::uint32_t k,
                              Elem value) const {
    std::size_t old = coordinate(flat, k);
    return flat - old * pow_[k + 1] + value * pow_[k + 1];
  }

  // Advances tuple to its row-major successor; false after the last tuple.
  bool advance(std::vector<Elem>& tuple) const {
    for (std::uint32_t k = n_; k > 0; --k) {
      if (++tuple[k - 1] < m_) return true;
      tuple[k - 1] = 0;
    }
    return false;
  }

 private:
  std::uint32_t m_, n_;
  std::vector<std::size_t> pow_;
};

// Dense binary relation on {0, ..., size-1} backed by a bit matrix.
class BinaryRelation {
 public:
  BinaryRelation() : size_(0), words_per_row_(0) {}
  explicit BinaryRelation(std::uint32_t size)
      : size_(size),
        words_per_row_((size + 63) / 64),
        bits_(static_cast<std::size_t>(size) * words_per_row_, 0) {}

  static BinaryRelation identity(std::uint32_t size) {
    BinaryRelation r(size);
    for (Elem x = 0; x < size; ++x) r.set(x, x);
    return r;
  }

  static BinaryRelation full(std::uint32_t size) {
    BinaryRelation r(size);
    for (Elem x = 0; x < size; ++x)
      for (Elem y = 0; y < size; ++y) r.set(x, y);
    return r;
  }

  std::uint32_t size() const { return size_; }

  void set(Elem x, Elem y) {
    bits_[row(x) + y / 64] |= std::uint64_t{1} << (y % 64);
  }
  void clear(Elem x, Elem y) {
    bits_[row(x) + y / 64] &= ~(std::uint64_t{1} << (y % 64));
  }
  bool test(Elem x, Elem y) const {
    return (bits_[row(x) + y / 64] >> (y % 64)) & 1;
  }

  std::size_t pair_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::vector<Elem> row_elements(Elem x) const {
    std::vector<Elem> out;
    for (Elem y = 0; y < size_; ++y)
      if (test(x, y)) out.push_back(y);
    return out;
  }

  // All x related to at least one y.
  std::vector<Elem> domain_elements() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < size_; ++x) {
      bool any = false;
      for (std::size_t w = 0; w < words_per_row_ && !any; ++w)
        any = bits_[row(x) + w] != 0;
      if (any) out.push_back(x);
    }
    return out;
  }

  bool is_reflexive() const {
    for (Elem x = 0; x < size_; ++x)
      if (!test(x, x)) return false;
    return true;
  }

  bool is_symmetric() const {
    for (Elem x = 0; x < size_; ++x)
      for (Elem y = static_cast<Elem>(x + 1); y < size_; ++y)
        if (test(x, y) != test(y, x)) return false;
    return true;
  }

  bool is_transitive() const {
    for (Elem x = 0; x < size_; ++x)
      for (Elem y = 0; y < size_; ++y) {
        if (!test(x, y)) continue;
        for (std::size_t w = 0; w < words_per_row_; ++w) {
          if (bits_[row(y) + w] & ~bits_[row(x) + w]) return false;
        }
      }
    return true;
  }

  bool is_antisymmetric() const {
    for (Elem x = 0; x < size_; ++x)
      for (Elem y = static_cast<Elem>(x + 1); y < size_; ++y)
        if (test(x, y) && test(y, x)) return false;
    return true;
  }

  bool operator==(const BinaryRelation& other) const {
    return size_ == other.size_ && bits_ == other.bits_;
  }

 private:
  std::size_t row(Elem x) const {
    return static_cast<std::size_t>(x) * words_per_row_;
  }
  std::uint32_t size_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

inline std::string tuple_to_string(std::span<const Elem> tuple) {
  std::string s = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(tuple[k]);
  }
  s += ")";
  return s;
}

}  // namespace menger
