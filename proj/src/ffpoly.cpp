#include "sqfib/ffpoly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sqfib/errors.hpp"
#include "sqfib/linalg.hpp"

namespace sqfib {

namespace {

void require_monic(const Poly& f, const char* op) {
  require(f.field() != nullptr, std::string(op) + ": polynomial without a field");
  require(f.is_monic(), std::string(op) + ": polynomial must be monic");
  require(f.degree() >= 1, std::string(op) + ": degree must be at least 1");
  require(f.degree() <= kMaxPolyDegree, std::string(op) + ": degree exceeds 64");
}

Poly one(const FieldPtr& F) { return Poly::constant(F, 1); }

// g(x)^(1/p) for g whose exponents are all multiples of p.
Poly pth_root(const Poly& g) {
  const Field& F = g.F();
  const std::size_t p = F.characteristic();
  std::vector<Elem> c;
  for (std::size_t i = 0; i < g.coeffs().size(); i += p) c.push_back(F.frobenius_inverse(g.coeffs()[i]));
  return Poly(g.field(), std::move(c));
}

void squarefree(const Poly& f, unsigned scale, std::vector<Factor>& out) {
  const FieldPtr& F = f.field();
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac, i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree(pth_root(c), scale * F->characteristic(), out);
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, unsigned>> out;
  const FieldPtr& F = g.field();
  const Poly x = Poly::x(F);
  Poly h = x % g;
  unsigned d = 1;
  while (g.degree() >= 2 * static_cast<int>(d)) {
    h = powmod(h, F->order(), g);
    Poly t = gcd(h - x, g);
    if (t.degree() > 0) {
      out.emplace_back(t, d);
      g = g / t;
      h = h % g;
    }
    ++d;
  }
  if (g.degree() > 0) out.emplace_back(g, static_cast<unsigned>(g.degree()));
  return out;
}

void equal_degree(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const FieldPtr& F = g.field();
  const Count exponent = (nt::count_pow(F->order(), d) - 1) / 2;
  for (;;) {
    std::vector<Elem> c(static_cast<std::size_t>(g.degree()));
    for (Elem& e : c) e = static_cast<Elem>(rng() % F->order());
    Poly a(F, std::move(c));
    if (a.degree() < 1) continue;
    Poly split = gcd(a, g);
    if (split.degree() <= 0) split = gcd(powmod(a, exponent, g) - one(F), g);
    if (split.degree() > 0 && split.degree() < g.degree()) {
      equal_degree(split, d, rng, out);
      equal_degree(g / split, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  require_monic(f, "is_irreducible");
  const int n = f.degree();
  if (n == 1) return true;
  const FieldPtr& F = f.field();
  const Poly x = Poly::x(F);
  std::vector<Poly> frob{x % f};  // frob[i] = x^(q^i) mod f
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), F->order(), f));
  if (frob[static_cast<std::size_t>(n)] != x % f) return false;
  for (auto [r, e] : nt::factor(static_cast<std::uint64_t>(n))) {
    (void)e;
    if (gcd(frob[static_cast<std::size_t>(n) / r] - x, f).degree() != 0) return false;
  }
  return true;
}

std::vector<Factor> factorize(const Poly& f) {
  require_monic(f, "factorize");
  std::vector<Factor> sqf;
  squarefree(f, 1, sqf);
  std::mt19937_64 rng(0x51f1b);
  std::vector<Factor> result;
  for (const auto& [g, mult] : sqf) {
    for (auto& [part, d] : distinct_degree(g)) {
      std::vector<Poly> pieces;
      equal_degree(part, d, rng, pieces);
      for (auto& piece : pieces) result.push_back({std::move(piece), mult});
    }
  }
  std::sort(result.begin(), result.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  // Distinct squarefree layers never share a factor, but merge defensively
  // against equal polynomials landing in different layers.
  std::vector<Factor> merged;
  for (auto& fac : result) {
    if (!merged.empty() && merged.back().poly == fac.poly) {
      merged.back().multiplicity += fac.multiplicity;
    } else {
      merged.push_back(std::move(fac));
    }
  }
  return merged;
}

Count irreducible_count(std::uint64_t q, unsigned d) {
  require(d >= 1, "irreducible_count: degree must be positive");
  Count total = 0;
  for (std::uint64_t e : nt::divisors(d)) total += nt::mobius(e) * nt::count_pow(q, d / e);
  return total / d;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, unsigned d) {
  require(d >= 1, "monic_irreducibles: degree must be positive");
  const std::uint32_t q = field->order();
  if (nt::count_pow(q, d) > Count(1U << 24U)) throw BoundExceeded("monic_irreducibles: q^d exceeds 2^24");
  std::vector<Poly> out;
  std::vector<Elem> lower(d, 0);
  for (;;) {
    std::vector<Elem> c = lower;
    c.push_back(1);
    Poly cand(field, std::move(c));
    if ((cand.constant_term() != 0 || d == 1) && is_irreducible(cand)) out.push_back(std::move(cand));
    int pos = static_cast<int>(d) - 1;
    while (pos >= 0) {
      if (++lower[static_cast<std::size_t>(pos)] < q) break;
      lower[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

Poly substitute_power(const Poly& f, unsigned m) {
  require(m >= 1, "substitute_power: m must be positive");
  require(f.degree() * static_cast<long>(m) <= kMaxPolyDegree, "substitute_power: degree exceeds 64");
  if (f.is_zero()) return f;
  std::vector<Elem> c(static_cast<std::size_t>(f.degree()) * m + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) c[i * m] = f.coeffs()[i];
  return Poly(f.field(), std::move(c));
}

Poly reciprocal(const Poly& f) {
  require(!f.is_zero() && f.constant_term() != 0, "reciprocal: zero constant term");
  const Field& F = f.F();
  const Elem s = F.inv(f.constant_term());
  std::vector<Elem> c(f.coeffs().rbegin(), f.coeffs().rend());
  for (Elem& e : c) e = F.mul(e, s);
  return Poly(f.field(), std::move(c));
}

Poly conj_reciprocal(const Poly& f) {
  require(f.F().has_square_order(), "conj_reciprocal: field order is not a square");
  require(!f.is_zero() && f.constant_term() != 0, "conj_reciprocal: zero constant term");
  const Field& F = f.F();
  const Elem s = F.inv(F.conjugate(f.constant_term()));
  std::vector<Elem> c(f.coeffs().rbegin(), f.coeffs().rend());
  for (Elem& e : c) e = F.mul(F.conjugate(e), s);
  return Poly(f.field(), std::move(c));
}

std::uint64_t root_order_u64(const Poly& f) {
  require_monic(f, "root_order");
  require(f != Poly::x(f.field()), "root_order: f = x has root 0");
  require(is_irreducible(f), "root_order: polynomial is reducible");
  const Field& F = f.F();
  if (f.degree() == 1) return F.element_order(F.neg(f.constant_term()));
  const std::uint64_t group = nt::checked_pow(F.order(), static_cast<unsigned>(f.degree())) - 1;
  const Poly x = Poly::x(f.field());
  const Poly unit = Poly::constant(f.field(), 1);
  std::uint64_t ord = group;
  for (auto [r, e] : nt::factor(group)) {
    (void)e;
    while (ord % r == 0 && powmod(x, ord / r, f) == unit) ord /= r;
  }
  return ord;
}

Count root_order(const Poly& f) { return nt::to_count(root_order_u64(f)); }

Count mult_order(std::uint64_t s, std::uint64_t q) {
  require(s >= 1, "mult_order: s must be positive");
  require(std::gcd(s, q) == 1, "mult_order: gcd(s, q) != 1");
  return nt::to_count(nt::multiplicative_order(q % s, s));
}

Poly minimal_polynomial_mod(const Poly& element, const Poly& modulus) {
  require(modulus.degree() >= 1, "minimal_polynomial_mod: modulus must have positive degree");
  const FieldPtr& F = modulus.field();
  const std::size_t d = static_cast<std::size_t>(modulus.degree());
  RelationFinder finder(F, d);
  const Poly y = element % modulus;
  Poly power = Poly::constant(F, 1) % modulus;
  for (;;) {
    std::vector<Elem> v(d, 0);
    for (std::size_t i = 0; i < power.coeffs().size(); ++i) v[i] = power.coeffs()[i];
    if (auto rel = finder.add(std::move(v))) {
      std::vector<Elem> c(rel->size() + 1);
      for (std::size_t i = 0; i < rel->size(); ++i) c[i] = F->neg((*rel)[i]);
      c.back() = 1;
      return Poly(F, std::move(c));
    }
    power = mulmod(power, y, modulus);
  }
}

}  // namespace sqfib
