#include "sqfib/power_poly.hpp"

#include <numeric>

#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"

namespace sqfib {

namespace {

void require_class_poly(const Poly& f, const char* op) {
  require(f.field() != nullptr && f.is_monic(), std::string(op) + ": polynomial must be monic");
  require(f.degree() >= 1 && f.constant_term() != 0, std::string(op) + ": polynomial must not be x or divisible by x");
  require(is_irreducible(f), std::string(op) + ": polynomial must be irreducible");
}

}  // namespace

std::map<std::uint64_t, std::uint64_t> ButlerProfile::degree_counts() const {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& e : entries) out[e.degree] += e.count;
  return out;
}

ButlerProfile butler_profile(const Poly& f, unsigned m) {
  require(m >= 1, "butler_profile: m must be positive");
  require(std::gcd<std::uint64_t>(m, f.F().order()) == 1, "butler_profile: gcd(m, q) != 1");
  require_class_poly(f, "butler_profile");
  const std::uint64_t q = f.F().order();
  const std::uint64_t d = static_cast<std::uint64_t>(f.degree());
  ButlerProfile prof;
  prof.m = m;
  prof.t = root_order_u64(f);
  prof.m1 = m;
  prof.m2 = 1;
  for (auto [r, k] : nt::factor(m)) {
    if (prof.t % r != 0) continue;
    for (unsigned i = 0; i < k; ++i) {
      prof.m1 /= r;
      prof.m2 *= r;
    }
  }
  for (std::uint64_t e : nt::divisors(prof.m1)) {
    const std::uint64_t order = e * prof.m2 * prof.t;
    const std::uint64_t deg = nt::multiplicative_order(q % order, order);
    const std::uint64_t numer = d * prof.m2 * nt::euler_phi(e);
    ensure(numer % deg == 0, "Butler factor count is not an integer");
    if (numer / deg == 0) continue;
    prof.entries.push_back({deg, numer / deg, order, e});
  }
  std::uint64_t total = 0;
  for (const auto& e : prof.entries) total += e.degree * e.count;
  ensure(total == m * d, "Butler profile degrees do not sum to m deg f");
  return prof;
}

std::map<std::uint64_t, std::uint64_t> factored_profile(const Poly& f, unsigned m) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& fac : factorize(substitute_power(f, m))) {
    out[static_cast<std::uint64_t>(fac.poly.degree())] += fac.multiplicity;
  }
  return out;
}

TwoPowerClass classify2(const Poly& f) {
  require_class_poly(f, "classify2");
  const auto fs = factorize(substitute_power(f, 2));
  if (fs.size() == 1 && fs[0].multiplicity == 1 && fs[0].poly.degree() == 2 * f.degree()) {
    return SkewTwoPower{fs[0].poly};
  }
  ensure(fs.size() == 2 && fs[0].multiplicity == 1 && fs[1].multiplicity == 1 &&
             fs[0].poly.degree() == f.degree() && fs[1].poly.degree() == f.degree(),
         "f(x^2) for f = " + f.to_string() + " is neither irreducible nor two distinct factors of degree deg f");
  return TwoPower{fs[0].poly, fs[1].poly};
}

bool is_self_reciprocal(const Poly& f) { return reciprocal(f) == f; }
bool is_self_conjugate(const Poly& f) { return conj_reciprocal(f) == f; }

std::string to_string(StarClass c) {
  switch (c) {
    case StarClass::Power: return "power";
    case StarClass::SkewPower: return "skew-power";
    case StarClass::Neither: return "neither";
  }
  return "?";
}

StarClass classify2_star(const Poly& f) {
  require_class_poly(f, "classify2_star");
  require(is_self_reciprocal(f), "classify2_star: polynomial is not self-reciprocal");
  const auto c = classify2(f);
  if (const auto* tp = std::get_if<TwoPower>(&c)) {
    return is_self_reciprocal(tp->f1) || is_self_reciprocal(tp->f2) ? StarClass::Power : StarClass::Neither;
  }
  return StarClass::SkewPower;
}

StarClass classify2_tilde(const Poly& f) {
  require(f.field() != nullptr && f.F().has_square_order(), "classify2_tilde: field order is not a square");
  require_class_poly(f, "classify2_tilde");
  require(is_self_conjugate(f), "classify2_tilde: polynomial is not self-conjugate");
  const auto c = classify2(f);
  if (const auto* tp = std::get_if<TwoPower>(&c)) {
    return is_self_conjugate(tp->f1) || is_self_conjugate(tp->f2) ? StarClass::Power : StarClass::Neither;
  }
  return StarClass::SkewPower;
}

}  // namespace sqfib
