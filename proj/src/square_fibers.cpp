#include "sqfib/square_fibers.hpp"

#include <map>

#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"
#include "sqfib/oracle.hpp"
#include "sqfib/parallel.hpp"
#include "sqfib/power_poly.hpp"

namespace sqfib {

Poly square_root_image(const Poly& P) {
  return minimal_polynomial_mod(Poly::monomial(P.field(), 1, 2), P);
}

GLClassData square_class(const GLClassData& data) {
  std::map<Poly, Partition> acc;
  for (const auto& [P, mu] : data.entries()) {
    const Poly image = square_root_image(P);
    const auto cls = classify2(image);
    Partition contribution;
    if (image.degree() == P.degree()) {
      const auto* tp = std::get_if<TwoPower>(&cls);
      ensure(tp != nullptr && (tp->f1 == P || tp->f2 == P),
             "square_class: " + P.to_string() + " is not a factor of image(x^2) for image " + image.to_string());
      contribution = mu;
    } else {
      ensure(2 * image.degree() == P.degree(), "square_class: unexpected degree of squared root");
      const auto* sk = std::get_if<SkewTwoPower>(&cls);
      ensure(sk != nullptr && sk->F == P, "square_class: degree drop without skew classification");
      contribution = double_multiplicities(mu);
    }
    auto [it, inserted] = acc.try_emplace(image, contribution);
    if (!inserted) it->second = merge(it->second, contribution);
  }
  std::vector<ClassEntry> entries;
  for (auto& [f, lambda] : acc) entries.push_back({f, std::move(lambda)});
  return GLClassData::trusted(data.field(), std::move(entries));
}

bool has_square_root_gl(const GLClassData& data) {
  for (const auto& [f, lambda] : data.entries()) {
    if (!is_two_power(classify2(f)) && !halve_multiplicities(lambda)) return false;
  }
  return true;
}

namespace {

using Choice = std::vector<ClassEntry>;

// Every way to split each multiplicity m_j between f1 and f2, ascending lex
// on the f1 multiplicity vector.
std::vector<Choice> two_power_choices(const TwoPower& tp, const Partition& lambda) {
  const auto& terms = lambda.terms();
  std::vector<unsigned> split(terms.size(), 0);
  std::vector<Choice> out;
  for (;;) {
    std::vector<Partition::Term> a, b;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (split[i] > 0) a.push_back({terms[i].part, split[i]});
      if (terms[i].mult > split[i]) b.push_back({terms[i].part, terms[i].mult - split[i]});
    }
    Choice c;
    if (!a.empty()) c.push_back({tp.f1, Partition(std::move(a))});
    if (!b.empty()) c.push_back({tp.f2, Partition(std::move(b))});
    out.push_back(std::move(c));
    std::size_t pos = terms.size();
    while (pos-- > 0) {
      if (++split[pos] <= terms[pos].mult) break;
      split[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace

SquareRootClassList square_root_classes(const GLClassData& data) {
  SquareRootClassList result{data, {}};
  std::vector<std::vector<Choice>> local;
  for (const auto& [f, lambda] : data.entries()) {
    const auto cls = classify2(f);
    if (const auto* tp = std::get_if<TwoPower>(&cls)) {
      local.push_back(two_power_choices(*tp, lambda));
    } else {
      auto half = halve_multiplicities(lambda);
      if (!half) return result;
      local.push_back({Choice{{std::get<SkewTwoPower>(cls).F, *half}}});
    }
  }
  std::vector<std::size_t> idx(local.size(), 0);
  for (;;) {
    std::vector<ClassEntry> entries;
    for (std::size_t i = 0; i < local.size(); ++i) {
      const auto& c = local[i][idx[i]];
      entries.insert(entries.end(), c.begin(), c.end());
    }
    GLClassData root = GLClassData::trusted(data.field(), std::move(entries));
    ensure(square_class(root) == data, "square_root_classes: candidate " + root.to_string() + " does not square to " +
                                           data.to_string());
    result.roots.push_back(std::move(root));
    std::size_t pos = local.size();
    while (pos-- > 0) {
      if (++idx[pos] < local[pos].size()) break;
      idx[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return result;
}

Count count_square_roots(const GLClassData& data) {
  const Count base = centralizer_order(data);
  Count total = 0;
  for (const auto& root : square_root_classes(data).roots) {
    const Count c = centralizer_order(root);
    ensure(base % c == 0, "centralizer of a square root does not divide the centralizer of its square");
    total += base / c;
  }
  return total;
}

std::string PaperFormulaResult::status_name() const {
  switch (status) {
    case Status::Value: return "value";
    case Status::NonIntegralExponent: return "non-integral-exponent";
    case Status::UndefinedFactor: return "undefined-factor";
  }
  return "?";
}

PaperFormulaResult paper_count_formula(const GLClassData& data) {
  require(has_square_root_gl(data), "paper_count_formula: class has no square root");
  PaperFormulaResult r;
  r.value = 1;
  const std::uint64_t q = data.field()->order();
  auto fail = [&](PaperFormulaResult::Status s, std::string why) {
    if (r.status == PaperFormulaResult::Status::Value) r.status = s;
    r.reasons.push_back(std::move(why));
  };
  for (const auto& [f, lambda] : data.entries()) {
    if (is_two_power(classify2(f))) {
      // q^gamma * prod_j |GL_{m_j}(q^d)| / prod_j |GL_{m_j/2}(q^{2d})|
      const unsigned d = static_cast<unsigned>(f.degree());
      const auto& t = lambda.terms();
      Count gamma4 = 0;
      for (std::size_t u = 0; u < t.size(); ++u) {
        for (std::size_t v = u + 1; v < t.size(); ++v) gamma4 += 3 * Count(t[u].part) * t[u].mult * t[v].mult;
        gamma4 += 3 * Count(t[u].part - 1) * t[u].mult * t[u].mult;
      }
      bool ok = true;
      if (gamma4 % 4 != 0) {
        fail(PaperFormulaResult::Status::NonIntegralExponent,
             "exponent " + gamma4.get_str() + "/4 is not an integer for f = " + f.to_string());
        ok = false;
      }
      for (const auto& term : t) {
        if (term.mult % 2 != 0) {
          fail(PaperFormulaResult::Status::UndefinedFactor,
               "GL_{" + std::to_string(term.mult) + "/2} is undefined for f = " + f.to_string() + ", part " +
                   std::to_string(term.part));
          ok = false;
        }
      }
      if (!ok) continue;
      mpq_class factor(nt::count_pow(q, Count(gamma4 / 4).get_ui()));
      for (const auto& term : t) {
        factor *= mpq_class(gl_order(term.mult, q, d));
        factor /= mpq_class(gl_order(term.mult / 2, q, 2 * d));
      }
      r.value *= factor;
    } else {
      Count two_l = nt::count_pow(2, distinct_part_count(lambda));
      r.value *= mpq_class(two_l - 1);
    }
  }
  r.value.canonicalize();
  return r;
}

namespace {

bool all_even(const Partition& lambda) { return halve_multiplicities(lambda).has_value(); }

}  // namespace

bool has_square_root_unitary(const GLClassData& data) {
  require(data.field()->has_square_order(), "unitary data must live over a field of square order");
  for (const auto& [f, lambda] : data.entries()) {
    const Poly partner = conj_reciprocal(f);
    const Partition* p = data.find(partner);
    require(p != nullptr && *p == lambda, "class data is not closed under f -> f~ with matching partitions");
  }
  for (const auto& [f, lambda] : data.entries()) {
    if (is_self_conjugate(f)) {
      const StarClass c = classify2_tilde(f);
      if (c == StarClass::Neither) return false;
      if (c == StarClass::SkewPower && !all_even(lambda)) return false;
    } else if (!is_two_power(classify2(f)) && !all_even(lambda)) {
      return false;
    }
  }
  return true;
}

bool has_square_root_symplectic(const GLClassData& data) {
  const FieldPtr& F = data.field();
  const Poly x_minus_1 = Poly::linear(F, 1);
  const Poly x_plus_1 = Poly::linear(F, F->neg(1));
  for (const auto& [f, lambda] : data.entries()) {
    if (f == x_minus_1 || f == x_plus_1) continue;
    const Partition* p = data.find(reciprocal(f));
    require(p != nullptr && *p == lambda, "class data is not closed under f -> f* with matching partitions");
  }
  bool ok = true;
  for (const auto& [f, lambda] : data.entries()) {
    if (f == x_minus_1) continue;
    if (f == x_plus_1) {
      ok = false;
      continue;
    }
    if (is_self_reciprocal(f)) {
      const StarClass c = classify2_star(f);
      if (c == StarClass::Neither || (c == StarClass::SkewPower && !all_even(lambda))) ok = false;
    } else if (!is_two_power(classify2(f)) && !all_even(lambda)) {
      ok = false;
    }
  }
  return ok;
}

namespace {

nlohmann::ordered_json optional_count(const std::optional<Count>& c) {
  if (!c) return nullptr;
  return c->get_str();
}

}  // namespace

AuditReport audit_square_counts(unsigned n, std::uint64_t q, bool with_oracle, unsigned threads) {
  const FieldPtr F = Field::of_order(q);
  const auto classes = enumerate_classes(n, F);
  AuditReport report;
  report.kind = "square-counts";
  report.group = "gl";
  report.n = n;
  report.q = q;

  std::optional<oracle::ElementTable> table;
  std::vector<std::uint64_t> fibers;
  if (with_oracle) {
    table = oracle::ElementTable::enumerate(oracle::GroupSpec::make(oracle::GroupKind::GL, n, q), {.threads = threads});
    fibers = oracle::square_fiber_counts(*table, threads);
  }

  struct Row {
    Count size;
    Count count;
    bool has_root = false;
    std::optional<PaperFormulaResult> closed;
    std::optional<Count> oracle_fiber;
  };
  const auto rows = parallel_map<Row>(classes.size(), threads, [&](std::size_t i) {
    const auto& c = classes[i];
    Row row;
    row.size = class_size(c);
    row.count = count_square_roots(c);
    row.has_root = has_square_root_gl(c);
    if (row.has_root) row.closed = paper_count_formula(c);
    if (table) {
      auto idx = table->index_of(representative_matrix(c));
      ensure(idx.has_value(), "class representative missing from the oracle table");
      row.oracle_fiber = nt::to_count(fibers[*idx]);
    }
    return row;
  });

  std::size_t oracle_match = 0, oracle_mismatch = 0, closed_match = 0, closed_mismatch = 0, closed_unevaluable = 0,
              closed_na = 0, existence_bad = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    const Row& row = rows[i];
    nlohmann::ordered_json rec;
    rec["class"] = c.to_json();
    rec["label"] = c.to_string();
    rec["class_size"] = row.size.get_str();
    rec["count_square_roots"] = row.count.get_str();
    rec["oracle_fiber"] = optional_count(row.oracle_fiber);
    rec["has_square_root_gl"] = row.has_root;
    nlohmann::ordered_json closed;
    nlohmann::ordered_json flags;
    if (!row.closed) {
      closed["status"] = "not-applicable";
      closed["value"] = nullptr;
      flags["closed_form_matches_count"] = nullptr;
      ++closed_na;
    } else if (!row.closed->evaluable()) {
      closed["status"] = row.closed->status_name();
      closed["value"] = nullptr;
      flags["closed_form_matches_count"] = nullptr;
      ++closed_unevaluable;
      report.findings.push_back("closed form not evaluable at " + c.to_string() + ": " + row.closed->reasons.front());
    } else {
      closed["status"] = "value";
      closed["value"] = row.closed->value.get_str();
      const bool same = row.closed->value == mpq_class(row.count);
      flags["closed_form_matches_count"] = same;
      if (same) {
        ++closed_match;
      } else {
        ++closed_mismatch;
        report.findings.push_back("closed form gives " + row.closed->value.get_str() + " at " + c.to_string() +
                                  ", centralizer-index count is " + row.count.get_str());
      }
    }
    if (row.closed) closed["reasons"] = row.closed->reasons;
    rec["closed_form"] = std::move(closed);
    if (row.oracle_fiber) {
      const bool same = *row.oracle_fiber == row.count;
      flags["count_matches_oracle"] = same;
      if (same) {
        ++oracle_match;
      } else {
        ++oracle_mismatch;
        report.findings.push_back("count_square_roots " + row.count.get_str() + " differs from oracle fiber " +
                                  row.oracle_fiber->get_str() + " at " + c.to_string());
      }
    } else {
      flags["count_matches_oracle"] = nullptr;
    }
    const bool consistent = row.has_root == (row.count > 0);
    flags["existence_consistent"] = consistent;
    if (!consistent) ++existence_bad;
    rec["flags"] = std::move(flags);
    report.records.push_back(std::move(rec));
  }
  report.summary["classes"] = classes.size();
  report.summary["oracle"] = with_oracle;
  report.summary["count_matches_oracle"] = oracle_match;
  report.summary["count_mismatches_oracle"] = oracle_mismatch;
  report.summary["closed_form_matches"] = closed_match;
  report.summary["closed_form_mismatches"] = closed_mismatch;
  report.summary["closed_form_unevaluable"] = closed_unevaluable;
  report.summary["closed_form_not_applicable"] = closed_na;
  report.summary["existence_inconsistent"] = existence_bad;
  return report;
}

namespace {

template <class Predicate>
AuditReport audit_predicate(oracle::GroupKind kind, unsigned n, std::uint64_t q, unsigned threads, const char* name,
                            Predicate predicate) {
  const auto spec = oracle::GroupSpec::make(kind, n, q);
  const auto table = oracle::ElementTable::enumerate(spec, {.threads = threads});
  const auto fibers = oracle::square_fiber_counts(table, threads);
  const auto classes = oracle::conjugacy_classes(table);
  AuditReport report;
  report.kind = std::string(name) + "-predicate";
  report.group = oracle::kind_name(kind);
  report.n = n;
  report.q = q;
  std::size_t agree = 0, disagree = 0, invalid = 0;
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const std::uint32_t rep = classes.representative[c];
    const Matrix g = table.element(rep);
    const GLClassData data = oracle::class_data_of_element(g);
    const bool oracle_root = fibers[rep] > 0;
    nlohmann::ordered_json rec;
    rec["class"] = data.to_json();
    rec["label"] = data.to_string();
    rec["representative"] = g.to_string();
    rec["class_size"] = std::to_string(classes.size[c]);
    rec["oracle_fiber"] = std::to_string(fibers[rep]);
    rec["oracle_has_root"] = oracle_root;
    try {
      const bool pred = predicate(data);
      rec["predicate"] = pred;
      rec["agrees"] = pred == oracle_root;
      if (pred == oracle_root) {
        ++agree;
      } else {
        ++disagree;
        report.findings.push_back(std::string(name) + " criterion says " + (pred ? "root" : "no root") + " at " +
                                  data.to_string() + " (representative " + g.to_string() + "), oracle fiber is " +
                                  std::to_string(fibers[rep]));
      }
    } catch (const InvalidInput& e) {
      rec["predicate"] = nullptr;
      rec["agrees"] = nullptr;
      rec["error"] = e.what();
      ++invalid;
      report.findings.push_back(std::string(name) + " criterion rejected " + data.to_string() + ": " + e.what());
    }
    report.records.push_back(std::move(rec));
  }
  report.summary["classes"] = classes.count();
  report.summary["agreements"] = agree;
  report.summary["mismatches"] = disagree;
  report.summary["rejected"] = invalid;
  return report;
}

}  // namespace

AuditReport audit_symplectic_predicate(unsigned n, std::uint64_t q, unsigned threads) {
  return audit_predicate(oracle::GroupKind::Sp, n, q, threads, "symplectic", has_square_root_symplectic);
}

AuditReport audit_unitary_predicate(unsigned n, std::uint64_t q, unsigned threads) {
  return audit_predicate(oracle::GroupKind::U, n, q, threads, "unitary", has_square_root_unitary);
}

}  // namespace sqfib
