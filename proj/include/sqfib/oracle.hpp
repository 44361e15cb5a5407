#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqfib/field.hpp"
#include "sqfib/gl_classes.hpp"
#include "sqfib/linalg.hpp"
#include "sqfib/numtheory.hpp"

namespace sqfib::oracle {

enum class GroupKind : std::uint8_t { GL = 0, U = 1, Sp = 2, Oplus = 3, Ominus = 4, Oodd = 5 };

GroupKind parse_kind(std::string_view text);  // gl|u|sp|o+|o-|o0
std::string kind_name(GroupKind kind);

inline constexpr std::uint64_t kDefaultOrderBound = 1'000'000;
inline constexpr std::uint64_t kHardOrderBound = 10'000'000;

/// An explicit matrix group: all g in GL_n(F) with g^T B g = B (Sp, O) or
/// conj(g)^T H g = H (U), or all of GL_n(F). For U the matrices live over
/// F_{q^2}; n is always the matrix size.
struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  unsigned n = 0;
  std::uint64_t q = 0;
  FieldPtr field;
  Matrix form;  // unused for GL

  static GroupSpec make(GroupKind kind, unsigned n, std::uint64_t q);
  std::string describe() const;
};

// Classical order formula for the group described by the spec.
Count classical_order(GroupKind kind, unsigned n, std::uint64_t q);

struct EnumerateOptions {
  std::uint64_t max_order = kDefaultOrderBound;
  unsigned threads = 1;
};

/// All elements of a GroupSpec, packed row-major into 64-bit codes and kept
/// sorted; an element's index is its rank among the codes.
class ElementTable {
 public:
  static ElementTable enumerate(const GroupSpec& spec, const EnumerateOptions& opts = {});

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return codes_.size(); }
  std::uint64_t code(std::size_t i) const { return codes_[i]; }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  Matrix element(std::size_t i) const { return decode(codes_[i]); }
  std::optional<std::size_t> index_of(const Matrix& m) const;
  std::size_t identity_index() const;
  // Index of the inverse of each element.
  const std::vector<std::uint32_t>& inverses() const { return inverses_; }

  std::uint64_t encode(const Matrix& m) const;
  Matrix decode(std::uint64_t code) const;

  // Versioned binary cache: "SQF1", kind (u8), n (u32), q (u32), count (u64),
  // then count codes (u64), all little-endian.
  void save(const std::string& path) const;
  static ElementTable load(const std::string& path, const GroupSpec& spec);

 private:
  ElementTable(GroupSpec spec, std::vector<std::uint64_t> codes);
  void build_inverses();

  GroupSpec spec_;
  unsigned bits_ = 0;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint32_t> inverses_;
};

// fiber[i] = |{g : g^2 = element i}|.
std::vector<std::uint64_t> square_fiber_counts(const ElementTable& table, unsigned threads = 1);

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;        // element index -> class id
  std::vector<std::uint32_t> representative;  // class id -> smallest member index
  std::vector<std::uint64_t> size;            // class id -> class size
  std::size_t count() const { return representative.size(); }
};

ConjugacyClasses conjugacy_classes(const ElementTable& table);

std::uint64_t real_classes_oracle(const ElementTable& table, const ConjugacyClasses& classes);
Count s2_oracle(const ElementTable& table, const std::vector<std::uint64_t>& fibers);

// Inverts the class parametrization: factors the minimal polynomial and
// recovers Jordan multiplicities from ranks r_k = rank(f(g)^k) as
// m_j = (r_{j-1} - 2 r_j + r_{j+1}) / deg f.
GLClassData class_data_of_element(const Matrix& g);

}  // namespace sqfib::oracle
