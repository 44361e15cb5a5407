#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqfib/field.hpp"
#include "sqfib/linalg.hpp"
#include "sqfib/numtheory.hpp"
#include "sqfib/partition.hpp"
#include "sqfib/poly.hpp"

namespace sqfib {

struct ClassEntry {
  Poly poly;
  Partition partition;
  friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};

/// Combinatorial data of a conjugacy class of GL_n(q): a finite map from
/// monic irreducible polynomials f != x to nonempty partitions, with
/// n = sum deg(f) |lambda_f|. Entries are kept sorted by (degree, lex).
class GLClassData {
 public:
  GLClassData() = default;
  GLClassData(FieldPtr field, std::vector<ClassEntry> entries);

  // Skips the irreducibility checks; for data built from already-validated
  // polynomials.
  static GLClassData trusted(FieldPtr field, std::vector<ClassEntry> entries);

  // {"q": "3", "n": 2, "entries": [{"poly": "1,1", "partition": "1^2"}]}.
  // "q" and "n" are optional when a field is supplied; if present they must agree.
  static GLClassData from_json(const nlohmann::json& j, const FieldPtr& field = nullptr);
  nlohmann::ordered_json to_json() const;
  std::string to_string() const;

  const FieldPtr& field() const { return field_; }
  const std::vector<ClassEntry>& entries() const { return entries_; }
  unsigned n() const { return n_; }
  // Partition attached to f, or nullptr.
  const Partition* find(const Poly& f) const;

  friend bool operator==(const GLClassData& a, const GLClassData& b) {
    return a.field_ == b.field_ && a.entries_ == b.entries_;
  }
  friend bool operator<(const GLClassData& a, const GLClassData& b);

 private:
  void canonicalize();

  FieldPtr field_;
  std::vector<ClassEntry> entries_;
  unsigned n_ = 0;
};

inline constexpr std::uint64_t kMaxClassCount = 1'000'000;
inline constexpr unsigned kMaxRepresentativeSize = 12;

// |GL_n(Q)| with Q = q^d; memoized.
Count gl_order(unsigned n, std::uint64_t q, unsigned d = 1);

// Number of conjugacy classes of GL_n(q), from the class-data generating function.
Count class_count(unsigned n, std::uint64_t q);

void for_each_class(unsigned n, const FieldPtr& field, const std::function<void(const GLClassData&)>& visit);
// Sorted by entries, compared as (polynomial, partition) sequences.
std::vector<GLClassData> enumerate_classes(unsigned n, const FieldPtr& field,
                                           std::uint64_t max_classes = kMaxClassCount);

Count centralizer_order(const GLClassData& data);
Count class_size(const GLClassData& data);

// Block diagonal of generalized Jordan blocks J_{f,k}: companion blocks of f
// on the diagonal linked by identity blocks on the superdiagonal.
Matrix companion_matrix(const Poly& f);
Matrix representative_matrix(const GLClassData& data);

GLClassData inverse_class(const GLClassData& data);
bool is_real_class(const GLClassData& data);
Count element_order_of_class(const GLClassData& data);

}  // namespace sqfib
