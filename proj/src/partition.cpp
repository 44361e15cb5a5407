#include "sqfib/partition.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "sqfib/errors.hpp"

namespace sqfib {

Partition::Partition(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    require(terms_[i].part >= 1 && terms_[i].mult >= 1, "partition terms must be positive");
    require(i == 0 || terms_[i - 1].part < terms_[i].part, "partition parts must be strictly increasing");
  }
  require(weight() <= 4096, "partition weight too large");
}

Partition Partition::from_parts(const std::vector<unsigned>& parts) {
  std::map<unsigned, unsigned> m;
  for (unsigned a : parts) {
    require(a >= 1, "partition parts must be positive");
    ++m[a];
  }
  std::vector<Term> terms;
  for (auto [a, k] : m) terms.push_back({a, k});
  return Partition(std::move(terms));
}

Partition Partition::parse(std::string_view text) {
  std::map<unsigned, unsigned> m;
  std::size_t pos = 0;
  auto parse_uint = [&](std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty() && v >= 1,
            "malformed partition '" + std::string(text) + "'");
    return v;
  };
  if (text.empty()) return Partition{};
  while (pos <= text.size()) {
    const std::size_t plus = std::min(text.find('+', pos), text.size());
    const std::string_view tok = text.substr(pos, plus - pos);
    const std::size_t caret = tok.find('^');
    const unsigned part = parse_uint(tok.substr(0, caret));
    const unsigned mult = caret == std::string_view::npos ? 1 : parse_uint(tok.substr(caret + 1));
    m[part] += mult;
    pos = plus + 1;
  }
  std::vector<Term> terms;
  for (auto [a, k] : m) terms.push_back({a, k});
  return Partition(std::move(terms));
}

std::string Partition::to_string() const {
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += '+';
    s += std::to_string(t.part) + '^' + std::to_string(t.mult);
  }
  return s;
}

unsigned Partition::weight() const {
  unsigned w = 0;
  for (const auto& t : terms_) w += t.part * t.mult;
  return w;
}

unsigned Partition::multiplicity(unsigned part) const {
  for (const auto& t : terms_) {
    if (t.part == part) return t.mult;
  }
  return 0;
}

std::vector<unsigned> Partition::conjugate_parts() const {
  // lambda'_i = number of parts >= i
  std::vector<unsigned> conj(largest_part(), 0);
  for (const auto& t : terms_) {
    for (unsigned i = 0; i < t.part; ++i) conj[i] += t.mult;
  }
  return conj;
}

namespace {

void partitions_rec(unsigned size, unsigned remaining, std::vector<Partition::Term>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (size > remaining) return;
  for (unsigned m = 0; m * size <= remaining; ++m) {
    if (m > 0) cur.push_back({size, m});
    partitions_rec(size + 1, remaining - m * size, cur, out);
    if (m > 0) cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(unsigned n) {
  if (n > kMaxPartitionWeight) throw BoundExceeded("partitions_of: n exceeds 64");
  std::vector<Partition> out;
  std::vector<Partition::Term> cur;
  partitions_rec(1, n, cur, out);
  return out;
}

Count partition_count(unsigned n) {
  std::vector<Count> p(n + 1, 0);
  p[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    for (unsigned i = k; i <= n; ++i) p[i] += p[i - k];
  }
  return p[n];
}

Count gamma_exponent(const Partition& lambda, unsigned d) {
  require(!lambda.empty(), "gamma_exponent: empty partition");
  const auto& t = lambda.terms();
  Count g = 0;
  for (std::size_t u = 0; u < t.size(); ++u) {
    for (std::size_t v = u + 1; v < t.size(); ++v) g += 2 * Count(t[u].part) * t[u].mult * t[v].mult;
    g += Count(t[u].part - 1) * t[u].mult * t[u].mult;
  }
  return g * d;
}

Count gamma_exponent_conjugate(const Partition& lambda, unsigned d) {
  require(!lambda.empty(), "gamma_exponent: empty partition");
  Count g = 0;
  for (unsigned c : lambda.conjugate_parts()) g += Count(c) * c;
  for (const auto& t : lambda.terms()) g -= Count(t.mult) * t.mult;
  return g * d;
}

unsigned distinct_part_count(const Partition& lambda) { return static_cast<unsigned>(lambda.terms().size()); }

std::optional<Partition> halve_multiplicities(const Partition& lambda) {
  std::vector<Partition::Term> terms;
  for (const auto& t : lambda.terms()) {
    if (t.mult % 2 != 0) return std::nullopt;
    terms.push_back({t.part, t.mult / 2});
  }
  return Partition(std::move(terms));
}

Partition double_multiplicities(const Partition& lambda) {
  std::vector<Partition::Term> terms;
  for (const auto& t : lambda.terms()) terms.push_back({t.part, t.mult * 2});
  return Partition(std::move(terms));
}

Partition merge(const Partition& a, const Partition& b) {
  std::map<unsigned, unsigned> m;
  for (const auto& t : a.terms()) m[t.part] += t.mult;
  for (const auto& t : b.terms()) m[t.part] += t.mult;
  std::vector<Partition::Term> terms;
  for (auto [p, k] : m) terms.push_back({p, k});
  return Partition(std::move(terms));
}

}  // namespace sqfib
