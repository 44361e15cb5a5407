#include "sqfib/field.hpp"

#include <charconv>
#include <numeric>
#include <map>
#include <mutex>

#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"

namespace sqfib {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, unsigned>, FieldPtr>& registry() {
  static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> r;
  return r;
}

// Lex-smallest monic irreducible of degree k over F_p, constant term first.
std::vector<Elem> smallest_irreducible(const FieldPtr& fp, unsigned k) {
  const std::uint32_t p = fp->order();
  std::vector<Elem> lower(k, 0);  // c_0 .. c_{k-1}; c_0 most significant
  for (;;) {
    std::vector<Elem> coeffs = lower;
    coeffs.push_back(1);
    if (coeffs[0] != 0) {
      Poly cand(fp, coeffs);
      if (is_irreducible(cand)) return coeffs;
    }
    // Increment with c_{k-1} as the least significant position.
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0) {
      if (++lower[static_cast<std::size_t>(pos)] < p) break;
      lower[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    ensure(pos >= 0, "no irreducible polynomial found");
  }
}

}  // namespace

FieldPtr Field::make(std::uint64_t p, unsigned k) {
  require(k >= 1, "field degree must be positive");
  require(p % 2 == 1, "field characteristic must be odd");
  require(nt::is_prime(p), "field characteristic must be prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw BoundExceeded("field order exceeds 2^20");
  }
  {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find({p, k});
    if (it != registry().end()) return it->second;
  }
  std::vector<Elem> modulus;
  if (k > 1) modulus = smallest_irreducible(make(p, 1), k);
  auto field = std::make_shared<const Field>(static_cast<std::uint32_t>(p), k, std::move(modulus));
  std::lock_guard lock(registry_mutex());
  auto [it, inserted] = registry().emplace(std::make_pair(p, k), field);
  return it->second;
}

FieldPtr Field::of_order(std::uint64_t q) {
  auto [p, k] = nt::prime_power(q);
  require(p != 0, "field order must be a prime power");
  return make(p, k);
}

FieldPtr Field::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
            "malformed field order '" + std::string(text) + "'");
    return v;
  };
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    const auto p = parse_int(text.substr(0, caret));
    const auto k = parse_int(text.substr(caret + 1));
    require(k >= 1 && k <= 64, "malformed field order '" + std::string(text) + "'");
    return make(p, static_cast<unsigned>(k));
  }
  return of_order(parse_int(text));
}

Field::Field(std::uint32_t p, unsigned k, std::vector<Elem> modulus)
    : p_(p), k_(k), q_(static_cast<std::uint32_t>(nt::checked_pow(p, k))), modulus_(std::move(modulus)) {
  build_tables();
}

std::string Field::name() const {
  if (k_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(k_);
}

FieldPtr Field::prime_field() const { return make(p_, 1); }

std::uint32_t Field::root_order() const {
  require(has_square_order(), "field order is not a square");
  return static_cast<std::uint32_t>(nt::checked_pow(p_, k_ / 2));
}

Elem Field::digit_add(Elem a, Elem b, bool subtract) const {
  Elem r = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const Elem da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    const Elem d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    r += d * scale;
    scale *= p_;
  }
  return r;
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  return digit_add(a, b, false);
}

Elem Field::sub(Elem a, Elem b) const {
  if (k_ == 1) return a >= b ? a - b : a + p_ - b;
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + neg(b)];
  return digit_add(a, b, true);
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  return digit_add(0, a, true);
}

Elem Field::inv(Elem a) const {
  require(a != 0, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

Elem Field::pow(Elem a, const Count& e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const Count r = e % (q_ - 1);
  return pow(a, r.get_ui());
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::uint32_t Field::log(Elem a) const {
  require(a != 0 && a < q_, "log of zero");
  return log_[a];
}

std::uint64_t Field::element_order(Elem a) const {
  require(a != 0, "order of zero");
  const std::uint64_t n = q_ - 1;
  return n / std::gcd<std::uint64_t>(n, log_[a]);
}

Elem Field::conjugate(Elem a) const { return pow(a, root_order()); }

Elem Field::frobenius_inverse(Elem a) const { return pow(a, nt::checked_pow(p_, k_ - 1)); }

// Schoolbook product of digit vectors reduced by the modulus; only used while
// building the log tables.
Elem Field::slow_mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  std::vector<std::uint64_t> da(k_), db(k_), prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
  }
  Elem r = 0;
  for (unsigned i = k_; i-- > 0;) r = r * p_ + static_cast<Elem>(prod[i]);
  return r;
}

void Field::build_tables() {
  const std::uint64_t n = q_ - 1;
  const auto primes = nt::factor(n);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e != 0) {
      if (e & 1U) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1U;
    }
    return r;
  };
  Elem gen = 0;
  for (Elem cand = 1; cand < q_; ++cand) {
    bool primitive = true;
    for (auto [pr, e] : primes) {
      (void)e;
      if (slow_pow(cand, n / pr) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = cand;
      break;
    }
  }
  ensure(gen != 0 || q_ == 2, "no primitive element");
  exp_.assign(2 * n, 0);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = cur;
    exp_[i + n] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, gen);
  }
  ensure(cur == 1, "generator order mismatch");
  if (k_ > 1 && q_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = digit_add(a, b, false);
    }
  }
}

}  // namespace sqfib
