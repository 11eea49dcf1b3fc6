#pragma once

#include "qlo/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qlo {

using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// Dense row-major matrix over Q. Zero rows or zero columns are legal values;
/// the 0 x n matrix is the vacuous constraint.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(Index rows, Index cols);
    RatMatrix(Index rows, Index cols, std::vector<Rational> entries);

    /// Convenience for tests and small literals: {{1, 2}, {3, 4}}.
    static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
    static RatMatrix from_rows(const std::vector<RatVector>& rows, Index cols);
    static RatMatrix identity(Index n);
    static RatMatrix diagonal(std::span<const Rational> diag);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(Index r, Index c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(Index r, Index c) const { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(Index r) const { return {entries_.data() + r * cols_, cols_}; }
    RatVector column(Index c) const;
    const std::vector<Rational>& entries() const { return entries_; }

    RatMatrix transpose() const;
    /// A[rows x cols] in the order the index lists are given.
    RatMatrix submatrix(std::span<const Index> row_idx, std::span<const Index> col_idx) const;
    RatMatrix columns(std::span<const Index> col_idx) const;
    RatMatrix rows_of(std::span<const Index> row_idx) const;

    bool is_symmetric() const;
    bool is_zero() const;

    RatMatrix& operator+=(const RatMatrix& other);
    RatMatrix& operator-=(const RatMatrix& other);
    RatMatrix& operator*=(const Rational& scalar);

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Rational> entries_;
};

RatMatrix operator+(RatMatrix lhs, const RatMatrix& rhs);
RatMatrix operator-(RatMatrix lhs, const RatMatrix& rhs);
RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs);
RatMatrix operator*(RatMatrix lhs, const Rational& scalar);
RatVector operator*(const RatMatrix& lhs, std::span<const Rational> v);

/// [top; bottom] and [left | right].
RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom);
RatMatrix hstack(const RatMatrix& left, const RatMatrix& right);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// [0, n) minus the given indices, ascending.
IndexSet complement(std::span<const Index> subset, Index n);

}  // namespace qlo
