#include "sqfib/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <random>

#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"
#include "sqfib/parallel.hpp"

namespace sqfib::oracle {

GroupKind parse_kind(std::string_view text) {
  if (text == "gl") return GroupKind::GL;
  if (text == "u") return GroupKind::U;
  if (text == "sp") return GroupKind::Sp;
  if (text == "o+") return GroupKind::Oplus;
  if (text == "o-") return GroupKind::Ominus;
  if (text == "o0") return GroupKind::Oodd;
  throw InvalidInput("unknown group kind '" + std::string(text) + "'");
}

std::string kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::GL: return "gl";
    case GroupKind::U: return "u";
    case GroupKind::Sp: return "sp";
    case GroupKind::Oplus: return "o+";
    case GroupKind::Ominus: return "o-";
    case GroupKind::Oodd: return "o0";
  }
  return "?";
}

namespace {

Elem smallest_nonsquare(const Field& F) {
  for (Elem a = 1; a < F.order(); ++a) {
    if (F.log(a) % 2 == 1) return a;
  }
  throw InvariantViolation("no nonsquare");
}

bool is_square(const Field& F, Elem a) { return a == 0 || F.log(a) % 2 == 0; }

}  // namespace

GroupSpec GroupSpec::make(GroupKind kind, unsigned n, std::uint64_t q) {
  require(n >= 1, "group dimension must be positive");
  GroupSpec s;
  s.kind = kind;
  s.n = n;
  s.q = q;
  const FieldPtr base = Field::of_order(q);
  s.field = kind == GroupKind::U ? Field::make(base->characteristic(), base->degree() * 2) : base;
  const Field& F = *s.field;
  switch (kind) {
    case GroupKind::GL:
      break;
    case GroupKind::U:
      s.form = Matrix::identity(s.field, n);
      break;
    case GroupKind::Sp: {
      require(n % 2 == 0, "symplectic groups need even matrix size");
      const unsigned h = n / 2;
      s.form = Matrix(s.field, n);
      for (unsigned i = 0; i < h; ++i) {
        s.form(i, h + i) = 1;
        s.form(h + i, i) = F.neg(1);
      }
      break;
    }
    case GroupKind::Oodd:
      require(n % 2 == 1, "o0 needs odd matrix size");
      s.form = Matrix::identity(s.field, n);
      break;
    case GroupKind::Oplus:
    case GroupKind::Ominus: {
      require(n % 2 == 0, "o+ and o- need even matrix size");
      // diag(1, ..., 1, delta) is of plus type iff (-1)^(n/2) delta is a square.
      const Elem sign = (n / 2) % 2 == 0 ? 1 : F.neg(1);
      const bool want_square = kind == GroupKind::Oplus;
      const Elem delta = is_square(F, sign) == want_square ? 1 : smallest_nonsquare(F);
      s.form = Matrix::identity(s.field, n);
      s.form(n - 1, n - 1) = delta;
      break;
    }
  }
  return s;
}

std::string GroupSpec::describe() const {
  return kind_name(kind) + "(" + std::to_string(n) + "," + std::to_string(q) + ")";
}

Count classical_order(GroupKind kind, unsigned n, std::uint64_t q) {
  const Count Q = nt::to_count(q);
  auto qpow = [&](unsigned long e) { return nt::count_pow(q, e); };
  switch (kind) {
    case GroupKind::GL:
      return gl_order(n, q);
    case GroupKind::U: {
      Count r = qpow(static_cast<unsigned long>(n) * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) r *= qpow(i) - (i % 2 == 0 ? 1 : -1);
      return r;
    }
    case GroupKind::Sp: {
      const unsigned m = n / 2;
      Count r = qpow(static_cast<unsigned long>(m) * m);
      for (unsigned i = 1; i <= m; ++i) r *= qpow(2UL * i) - 1;
      return r;
    }
    case GroupKind::Oodd: {
      const unsigned m = (n - 1) / 2;
      Count r = 2 * qpow(static_cast<unsigned long>(m) * m);
      for (unsigned i = 1; i <= m; ++i) r *= qpow(2UL * i) - 1;
      return r;
    }
    case GroupKind::Oplus:
    case GroupKind::Ominus: {
      const unsigned m = n / 2;
      Count r = 2 * qpow(static_cast<unsigned long>(m) * (m - 1));
      r *= kind == GroupKind::Oplus ? Count(qpow(m) - 1) : Count(qpow(m) + 1);
      for (unsigned i = 1; i < m; ++i) r *= qpow(2UL * i) - 1;
      return r;
    }
  }
  return Q;
}

namespace {

// Column-by-column depth-first search over the group's matrices.
class ColumnSearch {
 public:
  explicit ColumnSearch(const GroupSpec& spec) : spec_(spec), F_(*spec.field), n_(spec.n) {
    const std::size_t total = nt::checked_pow(F_.order(), n_);
    vectors_.reserve(total);
    std::vector<Elem> v(n_, 0);
    for (std::size_t i = 0; i < total; ++i) {
      vectors_.push_back(v);
      for (std::size_t k = 0; k < n_; ++k) {
        if (++v[k] < F_.order()) break;
        v[k] = 0;
      }
    }
  }

  std::size_t candidate_count() const { return vectors_.size(); }

  std::vector<std::vector<Elem>> run_from(std::size_t first) {
    std::vector<std::vector<Elem>> out;
    cols_.clear();
    wrows_.clear();
    basis_.clear();
    if (accepts(vectors_[first])) {
      push(vectors_[first]);
      dfs(out);
      pop();
    }
    return out;
  }

 private:
  Elem dot(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
    Elem s = 0;
    for (std::size_t k = 0; k < n_; ++k) s = F_.add(s, F_.mul(a[k], b[k]));
    return s;
  }

  // w = c^T B, or conj(c)^T H for unitary groups.
  std::vector<Elem> form_row(const std::vector<Elem>& c) const {
    std::vector<Elem> w(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const Elem ci = spec_.kind == GroupKind::U ? F_.conjugate(c[i]) : c[i];
      if (ci == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) w[j] = F_.add(w[j], F_.mul(ci, spec_.form(i, j)));
    }
    return w;
  }

  std::vector<Elem> reduce(std::vector<Elem> v) const {
    for (const auto& [row, piv] : basis_) {
      const Elem x = v[piv];
      if (x == 0) continue;
      for (std::size_t k = 0; k < n_; ++k) v[k] = F_.sub(v[k], F_.mul(x, row[k]));
    }
    return v;
  }

  bool accepts(const std::vector<Elem>& v) const {
    const std::size_t j = cols_.size();
    if (spec_.kind == GroupKind::GL) {
      const auto r = reduce(v);
      return std::any_of(r.begin(), r.end(), [](Elem e) { return e != 0; });
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (dot(wrows_[i], v) != spec_.form(i, j)) return false;
    }
    return dot(form_row(v), v) == spec_.form(j, j);
  }

  void push(const std::vector<Elem>& v) {
    cols_.push_back(v);
    if (spec_.kind == GroupKind::GL) {
      auto r = reduce(v);
      std::size_t piv = 0;
      while (r[piv] == 0) ++piv;
      const Elem s = F_.inv(r[piv]);
      for (Elem& e : r) e = F_.mul(e, s);
      basis_.emplace_back(std::move(r), piv);
    } else {
      wrows_.push_back(form_row(v));
    }
  }

  void pop() {
    cols_.pop_back();
    if (spec_.kind == GroupKind::GL) {
      basis_.pop_back();
    } else {
      wrows_.pop_back();
    }
  }

  void dfs(std::vector<std::vector<Elem>>& out) {
    if (cols_.size() == n_) {
      std::vector<Elem> entries(n_ * n_);
      for (std::size_t c = 0; c < n_; ++c) {
        for (std::size_t r = 0; r < n_; ++r) entries[r * n_ + c] = cols_[c][r];
      }
      out.push_back(std::move(entries));
      return;
    }
    for (const auto& v : vectors_) {
      if (!accepts(v)) continue;
      push(v);
      dfs(out);
      pop();
    }
  }

  const GroupSpec& spec_;
  const Field& F_;
  std::size_t n_;
  std::vector<std::vector<Elem>> vectors_;
  std::vector<std::vector<Elem>> cols_;
  std::vector<std::vector<Elem>> wrows_;
  std::vector<std::pair<std::vector<Elem>, std::size_t>> basis_;
};

unsigned bits_for(const GroupSpec& spec) {
  const unsigned bits = static_cast<unsigned>(std::bit_width(spec.field->order() - 1));
  if (static_cast<std::uint64_t>(spec.n) * spec.n * bits > 64) {
    throw BoundExceeded("matrices of " + spec.describe() + " do not pack into 64 bits");
  }
  return bits;
}

}  // namespace

ElementTable::ElementTable(GroupSpec spec, std::vector<std::uint64_t> codes)
    : spec_(std::move(spec)), bits_(bits_for(spec_)), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  ensure(std::adjacent_find(codes_.begin(), codes_.end()) == codes_.end(), "duplicate group element");
  build_inverses();
}

ElementTable ElementTable::enumerate(const GroupSpec& spec, const EnumerateOptions& opts) {
  require(opts.max_order <= kHardOrderBound, "order bound above the hard limit 10^7");
  const Count expected = classical_order(spec.kind, spec.n, spec.q);
  if (expected > Count(static_cast<unsigned long>(opts.max_order))) {
    throw BoundExceeded(spec.describe() + " has order " + expected.get_str() + ", above the bound " +
                        std::to_string(opts.max_order));
  }
  const unsigned bits = bits_for(spec);
  ColumnSearch probe(spec);
  const std::size_t firsts = probe.candidate_count();
  auto chunks = parallel_map<std::vector<std::uint64_t>>(firsts, opts.threads, [&](std::size_t i) {
    ColumnSearch search(spec);
    std::vector<std::uint64_t> codes;
    for (const auto& entries : search.run_from(i)) {
      std::uint64_t code = 0;
      for (std::size_t k = entries.size(); k-- > 0;) code = (code << bits) | entries[k];
      codes.push_back(code);
    }
    return codes;
  });
  std::vector<std::uint64_t> codes;
  for (auto& c : chunks) codes.insert(codes.end(), c.begin(), c.end());
  ElementTable table(spec, std::move(codes));
  ensure(Count(static_cast<unsigned long>(table.size())) == expected,
         spec.describe() + ": enumerated " + std::to_string(table.size()) + " elements, order formula gives " +
             expected.get_str());
  return table;
}

std::uint64_t ElementTable::encode(const Matrix& m) const {
  std::uint64_t code = 0;
  const auto& e = m.entries();
  for (std::size_t k = e.size(); k-- > 0;) code = (code << bits_) | e[k];
  return code;
}

Matrix ElementTable::decode(std::uint64_t code) const {
  const std::size_t n = spec_.n;
  std::vector<Elem> e(n * n);
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (std::size_t k = 0; k < e.size(); ++k) {
    e[k] = static_cast<Elem>(code & mask);
    code >>= bits_;
  }
  return Matrix(spec_.field, n, std::move(e));
}

std::optional<std::size_t> ElementTable::index_of(const Matrix& m) const {
  const std::uint64_t c = encode(m);
  auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
  if (it == codes_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::size_t ElementTable::identity_index() const {
  auto idx = index_of(Matrix::identity(spec_.field, spec_.n));
  ensure(idx.has_value(), "identity missing from group table");
  return *idx;
}

void ElementTable::build_inverses() {
  inverses_.resize(codes_.size());
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    auto idx = index_of(element(i).inverse());
    ensure(idx.has_value(), "group table not closed under inversion");
    inverses_[i] = static_cast<std::uint32_t>(*idx);
  }
}

namespace {

void put_le(std::ostream& os, std::uint64_t v, unsigned bytes) {
  for (unsigned i = 0; i < bytes; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFFU));
}

std::uint64_t get_le(std::istream& is, unsigned bytes) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) {
    const int c = is.get();
    require(c != EOF, "truncated element table cache");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

}  // namespace

void ElementTable::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), "cannot open '" + path + "' for writing");
  os.write("SQF1", 4);
  put_le(os, static_cast<std::uint64_t>(spec_.kind), 1);
  put_le(os, spec_.n, 4);
  put_le(os, spec_.q, 4);
  put_le(os, codes_.size(), 8);
  for (std::uint64_t c : codes_) put_le(os, c, 8);
  require(static_cast<bool>(os), "failed writing '" + path + "'");
}

ElementTable ElementTable::load(const std::string& path, const GroupSpec& spec) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), "cannot open '" + path + "'");
  char magic[4] = {};
  is.read(magic, 4);
  require(is.gcount() == 4 && std::string_view(magic, 4) == "SQF1", "'" + path + "' is not an SQF1 cache");
  const auto kind = static_cast<GroupKind>(get_le(is, 1));
  const auto n = static_cast<unsigned>(get_le(is, 4));
  const auto q = get_le(is, 4);
  const auto count = get_le(is, 8);
  require(kind == spec.kind && n == spec.n && q == spec.q, "cache header does not match " + spec.describe());
  require(Count(static_cast<unsigned long>(count)) == classical_order(spec.kind, spec.n, spec.q),
          "cache element count does not match the group order");
  std::vector<std::uint64_t> codes(count);
  for (auto& c : codes) c = get_le(is, 8);
  return ElementTable(spec, std::move(codes));
}

std::vector<std::uint64_t> square_fiber_counts(const ElementTable& table, unsigned threads) {
  const auto squares = parallel_map<std::size_t>(table.size(), threads, [&](std::size_t i) {
    const Matrix g = table.element(i);
    auto idx = table.index_of(g * g);
    ensure(idx.has_value(), "group table not closed under squaring");
    return *idx;
  });
  std::vector<std::uint64_t> fiber(table.size(), 0);
  for (std::size_t s : squares) ++fiber[s];
  return fiber;
}

namespace {

// Closure of {identity} under right multiplication by the generators.
std::size_t generated_order(const ElementTable& table, const std::vector<Matrix>& gens) {
  std::vector<bool> seen(table.size(), false);
  std::deque<std::size_t> queue{table.identity_index()};
  seen[queue.front()] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Matrix x = table.element(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      const std::size_t y = *table.index_of(x * s);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count;
}

}  // namespace

ConjugacyClasses conjugacy_classes(const ElementTable& table) {
  // Pick random elements until they generate the whole group; orbits under
  // conjugation by a generating set are then the conjugacy classes.
  std::mt19937_64 rng(0xC1A55);
  std::vector<Matrix> gens;
  std::size_t reached = 1;
  while (reached < table.size()) {
    Matrix cand = table.element(rng() % table.size());
    gens.push_back(cand);
    const std::size_t r = generated_order(table, gens);
    if (r == reached) {
      gens.pop_back();
    } else {
      reached = r;
    }
  }
  std::vector<Matrix> inv_gens;
  for (const auto& g : gens) inv_gens.push_back(g.inverse());

  constexpr std::uint32_t kUnset = UINT32_MAX;
  ConjugacyClasses cc;
  cc.class_of.assign(table.size(), kUnset);
  for (std::size_t start = 0; start < table.size(); ++start) {
    if (cc.class_of[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cc.representative.size());
    cc.representative.push_back(static_cast<std::uint32_t>(start));
    std::uint64_t size = 1;
    std::deque<std::size_t> queue{start};
    cc.class_of[start] = id;
    while (!queue.empty()) {
      const Matrix x = table.element(queue.front());
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const std::size_t y = *table.index_of(gens[k] * x * inv_gens[k]);
        if (cc.class_of[y] == kUnset) {
          cc.class_of[y] = id;
          ++size;
          queue.push_back(y);
        }
      }
    }
    cc.size.push_back(size);
  }
  return cc;
}

std::uint64_t real_classes_oracle(const ElementTable& table, const ConjugacyClasses& classes) {
  std::uint64_t real = 0;
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const std::uint32_t rep = classes.representative[c];
    if (classes.class_of[table.inverses()[rep]] == c) ++real;
  }
  return real;
}

Count s2_oracle(const ElementTable& table, const std::vector<std::uint64_t>& fibers) {
  require(fibers.size() == table.size(), "fiber vector does not match the table");
  Count total = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    total += nt::to_count(fibers[i]) * nt::to_count(fibers[table.inverses()[i]]);
  }
  return total;
}

GLClassData class_data_of_element(const Matrix& g) {
  require(g.size() <= kMaxRepresentativeSize, "class_data_of_element: matrix larger than 12x12");
  require(g.is_invertible(), "class_data_of_element: singular matrix");
  const std::size_t n = g.size();
  std::vector<ClassEntry> entries;
  for (const auto& [f, e] : factorize(minimal_polynomial(g))) {
    const std::size_t d = static_cast<std::size_t>(f.degree());
    const Matrix a = poly_eval(f, g);
    std::vector<std::size_t> ranks{n};
    Matrix power = Matrix::identity(g.field(), n);
    for (unsigned k = 1; k <= e + 1; ++k) {
      power = power * a;
      ranks.push_back(power.rank());
    }
    std::vector<Partition::Term> terms;
    for (unsigned j = 1; j <= e; ++j) {
      const long long m = static_cast<long long>(ranks[j - 1]) - 2 * static_cast<long long>(ranks[j]) +
                          static_cast<long long>(ranks[j + 1]);
      ensure(m >= 0 && m % static_cast<long long>(d) == 0, "inconsistent rank sequence");
      if (m > 0) terms.push_back({j, static_cast<unsigned>(m / static_cast<long long>(d))});
    }
    entries.push_back({f, Partition(std::move(terms))});
  }
  return GLClassData::trusted(g.field(), std::move(entries));
}

}  // namespace sqfib::oracle
