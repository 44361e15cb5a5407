#include "sqfib/real_classes.hpp"

#include <numeric>

#include "sqfib/errors.hpp"
#include "sqfib/numtheory.hpp"
#include "sqfib/oracle.hpp"
#include "sqfib/parallel.hpp"
#include "sqfib/square_fibers.hpp"

namespace sqfib {

std::vector<ClassStats> class_stats(unsigned n, std::uint64_t q, unsigned threads) {
  const FieldPtr F = Field::of_order(q);
  auto classes = enumerate_classes(n, F);
  return parallel_map<ClassStats>(classes.size(), threads, [&](std::size_t i) {
    ClassStats s;
    s.data = classes[i];
    s.size = class_size(s.data);
    s.square_roots = count_square_roots(s.data);
    s.order = element_order_of_class(s.data);
    s.real = is_real_class(s.data);
    return s;
  });
}

Count count_order_dividing(const std::vector<ClassStats>& stats, std::uint64_t M) {
  require(M >= 1, "M must be positive");
  const Count m = nt::to_count(M);
  Count total = 0;
  for (const auto& s : stats) {
    if (m % s.order == 0) total += s.size;
  }
  return total;
}

Count count_order_exactly(const std::vector<ClassStats>& stats, std::uint64_t M) {
  require(M >= 1, "M must be positive");
  Count total = 0;
  for (std::uint64_t d : nt::divisors(M)) {
    const int mu = nt::mobius(M / d);
    if (mu != 0) total += mu * count_order_dividing(stats, d);
  }
  return total;
}

Count count_order_dividing(unsigned n, std::uint64_t q, std::uint64_t M, unsigned threads) {
  return count_order_dividing(class_stats(n, q, threads), M);
}

Count count_order_exactly(unsigned n, std::uint64_t q, std::uint64_t M, unsigned threads) {
  return count_order_exactly(class_stats(n, q, threads), M);
}

SeriesCoeffs SeriesCoeffs::one(unsigned degree) {
  SeriesCoeffs s(degree);
  s[0] = 1;
  return s;
}

SeriesCoeffs SeriesCoeffs::operator*(const SeriesCoeffs& o) const {
  ensure(degree() == o.degree(), "series truncation degrees differ");
  SeriesCoeffs r(degree());
  for (unsigned i = 0; i <= degree(); ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; i + j <= degree(); ++j) r[i + j] += c_[i] * o[j];
  }
  return r;
}

SeriesCoeffs SeriesCoeffs::pow(std::uint64_t e) const {
  SeriesCoeffs result = one(degree());
  SeriesCoeffs base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Count count_unity_roots_gf(unsigned n, std::uint64_t q, std::uint64_t M) {
  require(M >= 1, "M must be positive");
  const auto [p, k] = nt::prime_power(q);
  require(p != 0 && p % 2 == 1, "q must be an odd prime power");
  require(std::gcd(M, q) == 1, "the generating-function count needs gcd(M, q) = 1");
  (void)k;
  SeriesCoeffs total = SeriesCoeffs::one(n);
  for (std::uint64_t d : nt::divisors(M)) {
    const std::uint64_t e = d == 1 ? 1 : nt::multiplicative_order(q % d, d);
    const std::uint64_t phi = nt::euler_phi(d);
    ensure(phi % e == 0, "e(d) does not divide phi(d)");
    // sum_m z^{m e} / (Q^{m^2} (1/Q)_m) with Q = q^e
    SeriesCoeffs inner(n);
    const mpq_class Q(nt::count_pow(q, e));
    mpq_class pochhammer = 1;
    for (unsigned m = 0; static_cast<std::uint64_t>(m) * e <= n; ++m) {
      if (m > 0) {
        mpq_class Qi = 1;
        for (unsigned i = 0; i < m; ++i) Qi *= Q;
        pochhammer *= 1 - 1 / Qi;
      }
      mpq_class Qm2(nt::count_pow(q, e * m * m));
      mpq_class term = 1 / (Qm2 * pochhammer);
      term.canonicalize();
      ensure(term == mpq_class(1) / mpq_class(gl_order(m, q, static_cast<unsigned>(e))),
             "q-Pochhammer term differs from 1/|GL_m(q^e)|");
      inner[static_cast<unsigned>(m * e)] = term;
    }
    total = total * inner.pow(phi / e);
  }
  mpq_class a = total[n] * mpq_class(gl_order(n, q));
  a.canonicalize();
  ensure(a.get_den() == 1, "generating-function coefficient is not an integer count");
  return a.get_num();
}

Count s2_cardinality(const std::vector<ClassStats>& stats) {
  Count total = 0;
  for (const auto& s : stats) total += s.size * s.square_roots * s.square_roots;
  return total;
}

namespace {

Count group_order_checked(const std::vector<ClassStats>& stats, unsigned n, std::uint64_t q) {
  const Count order = gl_order(n, q);
  Count sizes = 0, squares = 0;
  for (const auto& s : stats) {
    sizes += s.size;
    squares += s.size * s.square_roots;
  }
  ensure(sizes == order, "class sizes do not sum to the group order");
  ensure(squares == order, "square-root counts do not sum to the group order");
  return order;
}

}  // namespace

Count real_class_count_direct(unsigned n, std::uint64_t q, unsigned threads) {
  Count total = 0;
  for (const auto& s : class_stats(n, q, threads)) total += s.real ? 1 : 0;
  return total;
}

Count s2_cardinality(unsigned n, std::uint64_t q, unsigned threads) {
  return s2_cardinality(class_stats(n, q, threads));
}

Count real_class_count_ms(unsigned n, std::uint64_t q, unsigned threads) {
  const auto stats = class_stats(n, q, threads);
  const Count order = group_order_checked(stats, n, q);
  const Count s2 = s2_cardinality(stats);
  ensure(s2 % order == 0, "|s(2)| is not divisible by |G|");
  return s2 / order;
}

std::string to_string(C2Convention c) { return c == C2Convention::ExactOrder ? "exact-order" : "order-dividing"; }

mpq_class real_class_count_theorem(const std::vector<ClassStats>& stats, std::uint64_t q, unsigned n,
                                   C2Convention convention) {
  const Count c4 = count_order_exactly(stats, 4);
  const Count c2 = convention == C2Convention::ExactOrder ? count_order_exactly(stats, 2) : count_order_dividing(stats, 2);
  Count sum = 0;
  for (const auto& s : stats) {
    if (s.order == 1 || s.square_roots == 0) continue;
    sum += s.size * s.square_roots * (s.square_roots - 1);
  }
  mpq_class value = 1 + mpq_class(c4 + c2 * (c2 - 1) + sum) / mpq_class(gl_order(n, q));
  value.canonicalize();
  return value;
}

mpq_class real_class_count_theorem(unsigned n, std::uint64_t q, C2Convention convention, unsigned threads) {
  return real_class_count_theorem(class_stats(n, q, threads), q, n, convention);
}

AuditReport audit_real_counts(unsigned n, std::uint64_t q, bool with_oracle, unsigned threads) {
  const auto stats = class_stats(n, q, threads);
  const Count order = group_order_checked(stats, n, q);
  AuditReport report;
  report.kind = "real-classes";
  report.group = "gl";
  report.n = n;
  report.q = q;

  Count direct = 0;
  for (const auto& s : stats) direct += s.real ? 1 : 0;
  const Count s2 = s2_cardinality(stats);
  ensure(s2 % order == 0, "|s(2)| is not divisible by |G|");
  const Count ms = s2 / order;

  auto add = [&](const std::string& method, nlohmann::ordered_json value, std::optional<bool> agrees) {
    nlohmann::ordered_json rec;
    rec["method"] = method;
    rec["value"] = std::move(value);
    rec["agrees_with_direct"] = agrees ? nlohmann::ordered_json(*agrees) : nlohmann::ordered_json(nullptr);
    report.records.push_back(std::move(rec));
  };
  add("direct", direct.get_str(), true);
  add("murray-sambale", ms.get_str(), ms == direct);
  if (ms != direct) report.findings.push_back("|s(2)|/|G| = " + ms.get_str() + " but direct count is " + direct.get_str());
  for (auto conv : {C2Convention::ExactOrder, C2Convention::OrderDividing}) {
    const mpq_class v = real_class_count_theorem(stats, q, n, conv);
    const bool same = v == mpq_class(direct);
    add("theorem/" + to_string(conv), v.get_str(), same);
    if (!same) {
      report.findings.push_back("four-set evaluator (" + to_string(conv) + ") gives " + v.get_str() +
                                ", direct count is " + direct.get_str());
    }
  }

  nlohmann::ordered_json gf = nlohmann::ordered_json::array();
  for (std::uint64_t M : {2, 4}) {
    nlohmann::ordered_json g;
    g["M"] = M;
    const Count by_class = count_order_dividing(stats, M);
    g["by_classes"] = by_class.get_str();
    if (std::gcd(M, q) == 1) {
      const Count by_gf = count_unity_roots_gf(n, q, M);
      g["by_generating_function"] = by_gf.get_str();
      g["agree"] = by_gf == by_class;
      if (by_gf != by_class) {
        report.findings.push_back("g^" + std::to_string(M) + " = 1 count: generating function " + by_gf.get_str() +
                                  ", classes " + by_class.get_str());
      }
    }
    g["exact_order"] = count_order_exactly(stats, M).get_str();
    gf.push_back(std::move(g));
  }

  report.summary["group_order"] = order.get_str();
  report.summary["classes"] = stats.size();
  report.summary["real_classes_direct"] = direct.get_str();
  report.summary["s2"] = s2.get_str();
  report.summary["real_classes_ms"] = ms.get_str();
  report.summary["unity_roots"] = std::move(gf);

  if (with_oracle) {
    const auto table =
        oracle::ElementTable::enumerate(oracle::GroupSpec::make(oracle::GroupKind::GL, n, q), {.threads = threads});
    const auto classes = oracle::conjugacy_classes(table);
    const auto fibers = oracle::square_fiber_counts(table, threads);
    const Count real_oracle = nt::to_count(oracle::real_classes_oracle(table, classes));
    const Count s2_oracle = oracle::s2_oracle(table, fibers);
    add("oracle", real_oracle.get_str(), real_oracle == direct);
    report.summary["s2_oracle"] = s2_oracle.get_str();
    if (real_oracle != direct) {
      report.findings.push_back("oracle finds " + real_oracle.get_str() + " real classes, direct count is " +
                                direct.get_str());
    }
    if (s2_oracle != s2) {
      report.findings.push_back("oracle |s(2)| = " + s2_oracle.get_str() + ", class-wise sum is " + s2.get_str());
    }
  }
  return report;
}

}  // namespace sqfib
