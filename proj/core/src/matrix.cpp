#include "qlo/matrix.hpp"

#include "qlo/error.hpp"

#include <algorithm>
#include <string>

namespace qlo {

RatMatrix::RatMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(Index rows, Index cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("matrix entry count " + std::to_string(entries_.size()) + " != " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    const Index r = rows.size();
    const Index c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Rational> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ragged matrix literal");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return RatMatrix(r, c, std::move(entries));
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, Index cols) {
    std::vector<Rational> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw DimensionError("ragged matrix rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return RatMatrix(rows.size(), cols, std::move(entries));
}

RatMatrix RatMatrix::identity(Index n) {
    RatMatrix out(n, n);
    for (Index i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> diag) {
    RatMatrix out(diag.size(), diag.size());
    for (Index i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    return out;
}

RatVector RatMatrix::column(Index c) const {
    RatVector out(rows_);
    for (Index r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (Index r = 0; r < rows_; ++r)
        for (Index c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

RatMatrix RatMatrix::submatrix(std::span<const Index> row_idx, std::span<const Index> col_idx) const {
    RatMatrix out(row_idx.size(), col_idx.size());
    for (Index r = 0; r < row_idx.size(); ++r) {
        if (row_idx[r] >= rows_) throw DimensionError("row index out of range");
        for (Index c = 0; c < col_idx.size(); ++c) {
            if (col_idx[c] >= cols_) throw DimensionError("column index out of range");
            out(r, c) = (*this)(row_idx[r], col_idx[c]);
        }
    }
    return out;
}

RatMatrix RatMatrix::columns(std::span<const Index> col_idx) const {
    IndexSet all(rows_);
    for (Index r = 0; r < rows_; ++r) all[r] = r;
    return submatrix(all, col_idx);
}

RatMatrix RatMatrix::rows_of(std::span<const Index> row_idx) const {
    IndexSet all(cols_);
    for (Index c = 0; c < cols_; ++c) all[c] = c;
    return submatrix(row_idx, all);
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (Index r = 0; r < rows_; ++r)
        for (Index c = r + 1; c < cols_; ++c)
            if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
}

bool RatMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
    for (Index i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference shape mismatch");
    for (Index i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
}

RatMatrix operator+(RatMatrix lhs, const RatMatrix& rhs) { return lhs += rhs; }
RatMatrix operator-(RatMatrix lhs, const RatMatrix& rhs) { return lhs -= rhs; }
RatMatrix operator*(RatMatrix lhs, const Rational& scalar) { return lhs *= scalar; }

RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionError("matrix product shape mismatch");
    RatMatrix out(lhs.rows(), rhs.cols());
    for (Index i = 0; i < lhs.rows(); ++i) {
        for (Index k = 0; k < lhs.cols(); ++k) {
            const Rational& a = lhs(i, k);
            if (sgn(a) == 0) continue;
            for (Index j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

RatVector operator*(const RatMatrix& lhs, std::span<const Rational> v) {
    if (lhs.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    RatVector out(lhs.rows());
    for (Index i = 0; i < lhs.rows(); ++i) out[i] = dot(lhs.row(i), v);
    return out;
}

RatMatrix vstack(const RatMatrix& top, const RatMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vstack column mismatch");
    std::vector<Rational> entries = top.entries();
    entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
    return RatMatrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

RatMatrix hstack(const RatMatrix& left, const RatMatrix& right) {
    if (left.rows() != right.rows()) throw DimensionError("hstack row mismatch");
    RatMatrix out(left.rows(), left.cols() + right.cols());
    for (Index r = 0; r < left.rows(); ++r) {
        for (Index c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
        for (Index c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
    }
    return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
    Rational acc = 0;
    for (Index i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0) acc += a[i] * b[i];
    }
    return acc;
}

IndexSet complement(std::span<const Index> subset, Index n) {
    std::vector<char> taken(n, 0);
    for (Index i : subset) {
        if (i >= n) throw DimensionError("subset index out of range");
        taken[i] = 1;
    }
    IndexSet out;
    for (Index i = 0; i < n; ++i)
        if (!taken[i]) out.push_back(i);
    return out;
}

}  // namespace qlo
