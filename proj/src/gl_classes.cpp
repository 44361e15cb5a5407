#include "sqfib/gl_classes.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"

namespace sqfib {

GLClassData::GLClassData(FieldPtr field, std::vector<ClassEntry> entries)
    : field_(std::move(field)), entries_(std::move(entries)) {
  require(field_ != nullptr, "class data without a field");
  for (const auto& e : entries_) {
    require(e.poly.field() == field_, "class polynomial over a different field");
    require(e.poly.is_monic() && e.poly.constant_term() != 0, "class polynomials must be monic with f(0) != 0");
    require(is_irreducible(e.poly), "class polynomial " + e.poly.to_string() + " is reducible");
    require(!e.partition.empty(), "class partitions must be nonempty");
  }
  canonicalize();
}

GLClassData GLClassData::trusted(FieldPtr field, std::vector<ClassEntry> entries) {
  GLClassData d;
  d.field_ = std::move(field);
  d.entries_ = std::move(entries);
  d.canonicalize();
  return d;
}

void GLClassData::canonicalize() {
  std::sort(entries_.begin(), entries_.end(), [](const ClassEntry& a, const ClassEntry& b) { return a.poly < b.poly; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    require(entries_[i - 1].poly != entries_[i].poly, "duplicate polynomial in class data");
  }
  n_ = 0;
  for (const auto& e : entries_) n_ += static_cast<unsigned>(e.poly.degree()) * e.partition.weight();
  require(n_ >= 1, "class data must have n >= 1");
}

const Partition* GLClassData::find(const Poly& f) const {
  for (const auto& e : entries_) {
    if (e.poly == f) return &e.partition;
  }
  return nullptr;
}

bool operator<(const GLClassData& a, const GLClassData& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
                                      [](const ClassEntry& x, const ClassEntry& y) {
                                        if (x.poly != y.poly) return x.poly < y.poly;
                                        return x.partition < y.partition;
                                      });
}

GLClassData GLClassData::from_json(const nlohmann::json& j, const FieldPtr& field) {
  require(j.is_object(), "class JSON must be an object");
  FieldPtr F = field;
  if (j.contains("q")) {
    const auto& qj = j.at("q");
    FieldPtr parsed;
    if (qj.is_string()) {
      parsed = Field::parse(qj.get<std::string>());
    } else {
      require(qj.is_number_unsigned(), "class JSON field 'q' must be a string or integer");
      parsed = Field::of_order(qj.get<std::uint64_t>());
    }
    require(F == nullptr || F == parsed, "class JSON 'q' disagrees with the requested field");
    F = parsed;
  }
  require(F != nullptr, "class JSON lacks 'q'");
  require(j.contains("entries") && j.at("entries").is_array(), "class JSON lacks an 'entries' array");
  std::vector<ClassEntry> entries;
  for (const auto& e : j.at("entries")) {
    require(e.is_object() && e.contains("poly") && e.contains("partition") && e.at("poly").is_string() &&
                e.at("partition").is_string(),
            "class JSON entries need string 'poly' and 'partition'");
    entries.push_back({Poly::parse(F, e.at("poly").get<std::string>()),
                       Partition::parse(e.at("partition").get<std::string>())});
  }
  GLClassData data(F, std::move(entries));
  if (j.contains("n")) {
    require(j.at("n").is_number_unsigned() && j.at("n").get<unsigned>() == data.n(),
            "class JSON 'n' disagrees with the entries");
  }
  return data;
}

nlohmann::ordered_json GLClassData::to_json() const {
  nlohmann::ordered_json j;
  j["q"] = std::to_string(field_->order());
  j["n"] = n_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries_) arr.push_back({{"poly", e.poly.to_string()}, {"partition", e.partition.to_string()}});
  j["entries"] = std::move(arr);
  return j;
}

std::string GLClassData::to_string() const {
  std::string s = "{";
  for (const auto& e : entries_) {
    if (s.size() > 1) s += "; ";
    s += e.poly.pretty() + ":" + e.partition.to_string();
  }
  return s + "}";
}

Count gl_order(unsigned n, std::uint64_t q, unsigned d) {
  static std::mutex mu;
  static std::map<std::tuple<unsigned, std::uint64_t, unsigned>, Count> cache;
  const auto key = std::make_tuple(n, q, d);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Count Q = nt::count_pow(q, d);
  Count Qn;
  mpz_pow_ui(Qn.get_mpz_t(), Q.get_mpz_t(), n);
  Count order = 1;
  Count Qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    order *= Qn - Qi;
    Qi *= Q;
  }
  std::lock_guard lock(mu);
  cache.emplace(key, order);
  return order;
}

namespace {

using Series = std::vector<Count>;

Series series_mul(const Series& a, const Series& b, unsigned n) {
  Series c(n + 1, 0);
  for (unsigned i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

Count class_count(unsigned n, std::uint64_t q) {
  Series total(n + 1, 0);
  total[0] = 1;
  for (unsigned d = 1; d <= n; ++d) {
    Count copies = irreducible_count(q, d);
    if (d == 1) copies -= 1;  // f = x is excluded
    // factor = sum_w p(w) z^{d w}
    Series factor(n + 1, 0);
    for (unsigned w = 0; w * d <= n; ++w) factor[w * d] = partition_count(w);
    Series power(n + 1, 0);
    power[0] = 1;
    const std::size_t bits = copies == 0 ? 0 : mpz_sizeinbase(copies.get_mpz_t(), 2);
    for (std::size_t b = bits; b-- > 0;) {
      power = series_mul(power, power, n);
      if (mpz_tstbit(copies.get_mpz_t(), b) != 0) power = series_mul(power, factor, n);
    }
    total = series_mul(total, power, n);
  }
  return total[n];
}

namespace {

struct Enumerator {
  std::vector<Poly> basis;
  std::vector<std::vector<Partition>> parts_by_weight;
  const FieldPtr& field;
  const std::function<void(const GLClassData&)>& visit;
  std::vector<ClassEntry> current;

  void rec(std::size_t i, unsigned remaining) {
    if (remaining == 0) {
      visit(GLClassData::trusted(field, current));
      return;
    }
    if (i == basis.size()) return;
    const unsigned d = static_cast<unsigned>(basis[i].degree());
    if (d > remaining) return;
    rec(i + 1, remaining);
    for (unsigned w = 1; w * d <= remaining; ++w) {
      for (const auto& lambda : parts_by_weight[w]) {
        current.push_back({basis[i], lambda});
        rec(i + 1, remaining - w * d);
        current.pop_back();
      }
    }
  }
};

}  // namespace

void for_each_class(unsigned n, const FieldPtr& field, const std::function<void(const GLClassData&)>& visit) {
  require(n >= 1, "enumerate_classes: n must be positive");
  Enumerator en{{}, {}, field, visit, {}};
  for (unsigned d = 1; d <= n; ++d) {
    for (auto& f : monic_irreducibles(field, d)) {
      if (f.constant_term() != 0) en.basis.push_back(std::move(f));
    }
  }
  for (unsigned w = 0; w <= n; ++w) en.parts_by_weight.push_back(partitions_of(w));
  en.rec(0, n);
}

std::vector<GLClassData> enumerate_classes(unsigned n, const FieldPtr& field, std::uint64_t max_classes) {
  require(n >= 1, "enumerate_classes: n must be positive");
  if (n > kMaxPartitionWeight) throw BoundExceeded("enumerate_classes: n exceeds 64");
  if (class_count(n, field->order()) > Count(static_cast<unsigned long>(max_classes))) {
    throw BoundExceeded("enumerate_classes: more than " + std::to_string(max_classes) + " classes");
  }
  std::vector<GLClassData> out;
  for_each_class(n, field, [&](const GLClassData& c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

Count centralizer_order(const GLClassData& data) {
  const std::uint64_t q = data.field()->order();
  Count order = 1;
  for (const auto& e : data.entries()) {
    const unsigned d = static_cast<unsigned>(e.poly.degree());
    const Count g = gamma_exponent(e.partition, d);
    order *= nt::count_pow(q, g.get_ui());
    for (const auto& t : e.partition.terms()) order *= gl_order(t.mult, q, d);
  }
  return order;
}

Count class_size(const GLClassData& data) {
  const Count group = gl_order(data.n(), data.field()->order());
  const Count cent = centralizer_order(data);
  ensure(group % cent == 0, "centralizer order does not divide |GL_n(q)|");
  return group / cent;
}

Matrix companion_matrix(const Poly& f) {
  require(f.is_monic() && f.degree() >= 1, "companion_matrix: monic polynomial of positive degree required");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  Matrix c(f.field(), d);
  for (std::size_t i = 0; i + 1 < d; ++i) c(i + 1, i) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = f.F().neg(f.coeff(i));
  return c;
}

Matrix representative_matrix(const GLClassData& data) {
  if (data.n() > kMaxRepresentativeSize) throw BoundExceeded("representative_matrix: n exceeds 12");
  Matrix m(data.field(), data.n());
  std::size_t offset = 0;
  for (const auto& e : data.entries()) {
    const Matrix comp = companion_matrix(e.poly);
    const std::size_t d = comp.size();
    for (const auto& t : e.partition.terms()) {
      for (unsigned copy = 0; copy < t.mult; ++copy) {
        for (unsigned b = 0; b < t.part; ++b) {
          const std::size_t base = offset + b * d;
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) m(base + i, base + j) = comp(i, j);
          }
          if (b + 1 < t.part) {
            for (std::size_t i = 0; i < d; ++i) m(base + i, base + d + i) = 1;
          }
        }
        offset += t.part * d;
      }
    }
  }
  return m;
}

GLClassData inverse_class(const GLClassData& data) {
  std::vector<ClassEntry> entries;
  for (const auto& e : data.entries()) entries.push_back({reciprocal(e.poly), e.partition});
  return GLClassData::trusted(data.field(), std::move(entries));
}

bool is_real_class(const GLClassData& data) { return inverse_class(data) == data; }

Count element_order_of_class(const GLClassData& data) {
  std::uint64_t order = 1;
  unsigned largest = 1;
  for (const auto& e : data.entries()) {
    order = std::lcm(order, root_order_u64(e.poly));
    largest = std::max(largest, e.partition.largest_part());
  }
  // A unipotent Jordan block of size k has order the least power of p >= k.
  const std::uint64_t p = data.field()->characteristic();
  std::uint64_t unipotent = 1;
  while (unipotent < largest) unipotent *= p;
  return nt::to_count(order) * nt::to_count(unipotent);
}

}  // namespace sqfib
