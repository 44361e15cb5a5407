#include "sqfib/linalg.hpp"

#include "sqfib/errors.hpp"

namespace sqfib {

Matrix::Matrix(FieldPtr field, std::size_t n, std::vector<Elem> entries)
    : field_(std::move(field)), n_(n), a_(std::move(entries)) {
  require(a_.size() == n_ * n_, "matrix entry count mismatch");
  for (Elem e : a_) require(field_->contains(e), "matrix entry outside the field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::conjugate() const {
  Matrix c(field_, n_);
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = field_->conjugate(a_[i]);
  return c;
}

std::size_t Matrix::rank() const {
  const Field& F = *field_;
  std::vector<Elem> m = a_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_ && rank < n_; ++col) {
    std::size_t piv = rank;
    while (piv < n_ && m[piv * n_ + col] == 0) ++piv;
    if (piv == n_) continue;
    for (std::size_t j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[rank * n_ + j]);
    const Elem inv = F.inv(m[rank * n_ + col]);
    for (std::size_t i = rank + 1; i < n_; ++i) {
      const Elem f = F.mul(m[i * n_ + col], inv);
      if (f == 0) continue;
      for (std::size_t j = col; j < n_; ++j) m[i * n_ + j] = F.sub(m[i * n_ + j], F.mul(f, m[rank * n_ + j]));
    }
    ++rank;
  }
  return rank;
}

Matrix Matrix::inverse() const {
  const Field& F = *field_;
  Matrix m = *this;
  Matrix inv = identity(field_, n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    while (piv < n_ && m(piv, col) == 0) ++piv;
    require(piv < n_, "matrix is singular");
    for (std::size_t j = 0; j < n_; ++j) {
      std::swap(m(piv, j), m(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    const Elem s = F.inv(m(col, col));
    for (std::size_t j = 0; j < n_; ++j) {
      m(col, j) = F.mul(m(col, j), s);
      inv(col, j) = F.mul(inv(col, j), s);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == col || m(i, col) == 0) continue;
      const Elem f = m(i, col);
      for (std::size_t j = 0; j < n_; ++j) {
        m(i, j) = F.sub(m(i, j), F.mul(f, m(col, j)));
        inv(i, j) = F.sub(inv(i, j), F.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  ensure(a.field_ == b.field_ && a.n_ == b.n_, "matrix shape mismatch");
  const Field& F = *a.field_;
  const std::size_t n = a.n_;
  Matrix c(a.field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Elem x = a.a_[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c.a_[i * n + j] = F.add(c.a_[i * n + j], F.mul(x, b.a_[k * n + j]));
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  ensure(a.field_ == b.field_ && a.n_ == b.n_, "matrix shape mismatch");
  Matrix c(a.field_, a.n_);
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.field_->add(a.a_[i], b.a_[i]);
  return c;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    s += i == 0 ? "[" : ",[";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != 0) s += ',';
      s += std::to_string((*this)(i, j));
    }
    s += ']';
  }
  return s + "]";
}

Matrix poly_eval(const Poly& f, const Matrix& m) {
  ensure(f.field() == m.field(), "field mismatch");
  Matrix r(m.field(), m.size());
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    r = r * m;
    for (std::size_t d = 0; d < m.size(); ++d) r(d, d) = m.field()->add(r(d, d), c[i]);
  }
  return r;
}

Poly minimal_polynomial(const Matrix& m) {
  RelationFinder finder(m.field(), m.size() * m.size());
  Matrix power = Matrix::identity(m.field(), m.size());
  for (;;) {
    if (auto rel = finder.add(power.entries())) {
      std::vector<Elem> c(rel->size() + 1);
      for (std::size_t i = 0; i < rel->size(); ++i) c[i] = m.field()->neg((*rel)[i]);
      c.back() = 1;
      return Poly(m.field(), std::move(c));
    }
    power = power * m;
  }
}

std::optional<std::vector<Elem>> RelationFinder::add(std::vector<Elem> v) {
  require(v.size() == length_, "relation vector length mismatch");
  const Field& F = *field_;
  const std::size_t j = added_;
  std::vector<Elem> comb(j + 1, 0);
  comb[j] = 1;
  for (const Row& row : rows_) {
    const Elem x = v[row.pivot];
    if (x == 0) continue;
    // Rows are normalized to pivot 1.
    for (std::size_t t = 0; t < length_; ++t) v[t] = F.sub(v[t], F.mul(x, row.v[t]));
    for (std::size_t t = 0; t < row.comb.size(); ++t) comb[t] = F.sub(comb[t], F.mul(x, row.comb[t]));
  }
  std::size_t pivot = 0;
  while (pivot < length_ && v[pivot] == 0) ++pivot;
  if (pivot == length_) {
    // sum_t comb_t v_t = 0 with comb_j = 1.
    std::vector<Elem> rel(j);
    for (std::size_t t = 0; t < j; ++t) rel[t] = F.neg(comb[t]);
    return rel;
  }
  const Elem s = F.inv(v[pivot]);
  for (Elem& e : v) e = F.mul(e, s);
  for (Elem& e : comb) e = F.mul(e, s);
  // Keep earlier rows reduced at the new pivot so later reductions stay
  // single-pass.
  for (Row& row : rows_) {
    const Elem x = row.v[pivot];
    if (x == 0) continue;
    for (std::size_t t = 0; t < length_; ++t) row.v[t] = F.sub(row.v[t], F.mul(x, v[t]));
    row.comb.resize(j + 1, 0);
    for (std::size_t t = 0; t <= j; ++t) row.comb[t] = F.sub(row.comb[t], F.mul(x, comb[t]));
  }
  rows_.push_back(Row{std::move(v), std::move(comb), pivot});
  ++added_;
  return std::nullopt;
}

}  // namespace sqfib
