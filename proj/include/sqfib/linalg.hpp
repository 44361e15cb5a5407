#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sqfib/field.hpp"
#include "sqfib/poly.hpp"

namespace sqfib {

/// Dense square matrix over a finite field, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n), a_(n * n, 0) {}
  Matrix(FieldPtr field, std::size_t n, std::vector<Elem> entries);

  static Matrix identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t size() const { return n_; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const std::vector<Elem>& entries() const { return a_; }

  Matrix transpose() const;
  // Entrywise a -> a^sqrt(q); requires a field of square order.
  Matrix conjugate() const;
  std::size_t rank() const;
  bool is_invertible() const { return rank() == n_; }
  Matrix inverse() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.field_ == b.field_ && a.a_ == b.a_; }

  // Rows as "[[a,b],[c,d]]" with element indices.
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<Elem> a_;
};

Matrix poly_eval(const Poly& f, const Matrix& m);
Poly minimal_polynomial(const Matrix& m);

/// Incremental detector of the first linear dependence in a sequence of
/// vectors v_0, v_1, ... of a fixed length.
class RelationFinder {
 public:
  RelationFinder(FieldPtr field, std::size_t length) : field_(std::move(field)), length_(length) {}

  // Adds v_j. If v_j lies in the span of v_0..v_{j-1}, returns c with
  // v_j = sum_i c_i v_i and leaves the basis unchanged.
  std::optional<std::vector<Elem>> add(std::vector<Elem> v);
  std::size_t count() const { return added_; }

 private:
  struct Row {
    std::vector<Elem> v;
    std::vector<Elem> comb;
    std::size_t pivot;
  };
  FieldPtr field_;
  std::size_t length_;
  std::size_t added_ = 0;
  std::vector<Row> rows_;
};

}  // namespace sqfib
