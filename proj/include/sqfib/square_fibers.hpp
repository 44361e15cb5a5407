#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sqfib/audit.hpp"
#include "sqfib/gl_classes.hpp"

namespace sqfib {

// Minimal polynomial of beta^2 for beta a root of the irreducible P, computed
// in F_q[x]/(P).
Poly square_root_image(const Poly& P);

// Class of g^2 for g in the class `data`.
GLClassData square_class(const GLClassData& data);

bool has_square_root_gl(const GLClassData& data);

struct SquareRootClassList {
  GLClassData base;
  std::vector<GLClassData> roots;  // classes g with g^2 in `base`
};

SquareRootClassList square_root_classes(const GLClassData& data);

// |{g in GL_n(q) : g^2 = alpha}| for alpha in the class, as the sum of
// [Z(alpha) : Z(g)] over the root classes g.
Count count_square_roots(const GLClassData& data);

/// Value of the printed closed-form product for the number of square roots.
/// Evaluation can be impossible: a 3/4-weighted exponent may be fractional,
/// and an odd multiplicity makes a GL_{m/2} factor undefined.
struct PaperFormulaResult {
  enum class Status { Value, NonIntegralExponent, UndefinedFactor };
  Status status = Status::Value;
  mpq_class value;  // meaningful only when status == Value
  std::vector<std::string> reasons;

  bool evaluable() const { return status == Status::Value; }
  std::string status_name() const;
};

PaperFormulaResult paper_count_formula(const GLClassData& data);

// Existence criterion for unitary groups, on data over F_{q^2}.
bool has_square_root_unitary(const GLClassData& data);
// Existence criterion for symplectic groups as printed, including the clause
// that any (x+1, lambda) component rules out a square root.
bool has_square_root_symplectic(const GLClassData& data);

AuditReport audit_square_counts(unsigned n, std::uint64_t q, bool with_oracle, unsigned threads = 1);
// Oracle-driven audits of the two existence predicates.
AuditReport audit_symplectic_predicate(unsigned n, std::uint64_t q, unsigned threads = 1);
AuditReport audit_unitary_predicate(unsigned n, std::uint64_t q, unsigned threads = 1);

}  // namespace sqfib
