#pragma once

#include "qhe/field.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qhe {

using Vec = std::vector<Scalar>;

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

/// Dense row-major matrix over a Field's scalars.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static Mat identity(int n);
    static Mat from_rows(const std::vector<Vec>& rows, int cols);
    static Mat from_columns(const std::vector<Vec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const Scalar& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    Vec row(int r) const;
    Vec column(int c) const;
    Mat transposed() const;
    bool is_zero() const;

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Mat reduced;
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

RrefResult rref(const Field& f, Mat m);
int rank(const Field& f, const Mat& m);

/// Basis of the right null space; each vector has a 1 in one free column
/// and zeros in the other free columns (pivot-normalized).
std::vector<Vec> kernel_basis(const Field& f, const Mat& m);

/// A particular solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Field& f, const Mat& m, const Vec& b);

Mat multiply(const Field& f, const Mat& a, const Mat& b);
Vec apply(const Field& f, const Mat& a, const Vec& x);
bool is_zero(const Vec& v);

Vec to_dense(const SparseVec& v, int n);
SparseVec to_sparse(const Vec& v);
/// acc += c * v
void axpy(const Field& f, SparseVec& acc, const Scalar& c, const SparseVec& v);
Scalar coefficient(const SparseVec& v, int index);

/// Incrementally maintained reduced row echelon basis of a subspace of k^n.
///
/// Every stored row has a leading 1 at its pivot and every other stored row
/// is zero at that pivot. The pivot is the first non-zero coordinate, so the
/// column order decides which coordinates become pivots.
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(int ambient) : n_(ambient) {}

    int ambient() const { return n_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool full() const { return rank() == n_; }

    /// Returns true if v was independent of the current span.
    bool insert(const Field& f, Vec v);
    Vec reduce(const Field& f, Vec v) const;
    bool contains(const Field& f, const Vec& v) const;

    /// Coordinates of v with respect to rows(); nullopt if v is outside.
    std::optional<Vec> coordinates(const Field& f, const Vec& v) const;

    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }
    std::vector<int> non_pivots() const;

    bool operator==(const Echelon& o) const { return n_ == o.n_ && rows_ == o.rows_; }

private:
    int n_ = 0;
    std::vector<Vec> rows_;     // sorted by pivot
    std::vector<int> pivots_;
};

Echelon span_of(const Field& f, int ambient, const std::vector<Vec>& vectors);
Echelon intersect(const Field& f, const Echelon& a, const Echelon& b);

}  // namespace qhe
