#include "sqfib/poly.hpp"

#include <algorithm>
#include <charconv>

#include "sqfib/errors.hpp"

namespace sqfib {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  require(field_ != nullptr, "polynomial without a field");
  for (Elem c : c_) require(field_->contains(c), "coefficient outside the field");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::linear(FieldPtr field, Elem a) {
  const Elem na = field->neg(a);
  return Poly(std::move(field), {na, 1});
}

Poly Poly::parse(FieldPtr field, std::string_view text) {
  std::vector<Elem> coeffs;
  std::size_t pos = 0;
  require(!text.empty(), "empty polynomial string");
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    require(ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty(),
            "malformed polynomial '" + std::string(text) + "'");
    require(v < field->order(), "coefficient " + std::to_string(v) + " outside F_" + field->name());
    coeffs.push_back(static_cast<Elem>(v));
    pos = comma + 1;
  }
  require(coeffs.size() <= kMaxPolyDegree + 1, "polynomial degree exceeds 64");
  return Poly(std::move(field), std::move(coeffs));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(c_[i]);
  }
  return s;
}

std::string Poly::pretty() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Elem c = c_[i];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (c != 1 || i == 0) s += std::to_string(c);
    if (i >= 1) s += 'x';
    if (i >= 2) s += '^' + std::to_string(i);
  }
  return s;
}

Elem Poly::eval(Elem a) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, a), c_[i]);
  return r;
}

Poly Poly::monic() const {
  require(!is_zero(), "monic of zero polynomial");
  return scaled(field_->inv(leading()));
}

Poly Poly::derivative() const {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_->mul(field_->from_int(static_cast<long long>(i)), c_[i]));
  return Poly(field_, std::move(d));
}

Poly Poly::scaled(Elem c) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], c);
  return Poly(field_, std::move(v));
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<Elem> v(k, 0);
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->neg(c_[i]);
  return Poly(field_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  ensure(a.field_ == b.field_, "field mismatch");
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.F().add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  ensure(a.field_ == b.field_, "field mismatch");
  std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.F().sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  ensure(a.field_ == b.field_, "field mismatch");
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field_);
  const Field& F = a.F();
  std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.field_, std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  ensure(a.field() == b.field(), "field mismatch");
  require(!b.is_zero(), "polynomial division by zero");
  const Field& F = a.F();
  if (a.degree() < b.degree()) return {Poly::zero(a.field()), a};
  std::vector<Elem> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Elem> quot(r.size() - db, 0);
  const Elem lead_inv = F.inv(b.leading());
  const auto& bc = b.coeffs();
  for (std::size_t i = r.size(); i-- > db;) {
    const Elem c = F.mul(r[i], lead_inv);
    quot[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
  }
  r.resize(db);
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.c_ <=> b.c_;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const Count& e, const Poly& m) {
  Poly result = Poly::constant(base.field(), 1) % m;
  Poly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = mulmod(result, b, m);
  }
  return result;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) { return powmod(base, nt::to_count(e), m); }

}  // namespace sqfib
