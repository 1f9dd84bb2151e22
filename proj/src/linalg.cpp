#include "qhe/linalg.hpp"

#include "qhe/errors.hpp"

#include <algorithm>

namespace qhe {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
    Mat m(static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows(); ++r) {
        if (static_cast<int>(rows[r].size()) != cols)
            throw Error(ErrorKind::dimension_mismatch, "row length differs from column count");
        for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, int rows) {
    Mat m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols(); ++c) {
        if (static_cast<int>(cols[c].size()) != rows)
            throw Error(ErrorKind::dimension_mismatch, "column length differs from row count");
        for (int r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vec Mat::row(int r) const {
    return Vec(data_.begin() + static_cast<long>(r) * cols_, data_.begin() + static_cast<long>(r + 1) * cols_);
}

Vec Mat::column(int c) const {
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return Field::is_zero(s); });
}

RrefResult rref(const Field& f, Mat m) {
    RrefResult out;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!Field::is_zero(m(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        Scalar inv = f.inv(m(r, c));
        for (int j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || Field::is_zero(m(i, c))) continue;
            Scalar factor = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (!Field::is_zero(m(r, j))) f.sub_mul(m(i, j), factor, m(r, j));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

int rank(const Field& f, const Mat& m) {
    if (m.empty()) return 0;
    return rref(f, m).rank();
}

std::vector<Vec> kernel_basis(const Field& f, const Mat& m) {
    std::vector<Vec> out;
    if (m.cols() == 0) return out;
    RrefResult rr = rref(f, m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (int p : rr.pivots) is_pivot[p] = 1;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (int i = 0; i < rr.rank(); ++i) v[rr.pivots[i]] = f.neg(rr.reduced(i, free));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve(const Field& f, const Mat& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw Error(ErrorKind::dimension_mismatch, "right-hand side length " + std::to_string(b.size()) +
                                                       " does not match " + std::to_string(m.rows()) + " rows");
    Mat aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    RrefResult rr = rref(f, std::move(aug));
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (int i = 0; i < rr.rank(); ++i) x[rr.pivots[i]] = rr.reduced(i, m.cols());
    return x;
}

Mat multiply(const Field& f, const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "matrix product shapes");
    Mat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (Field::is_zero(a(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!Field::is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
        }
    if (!f.is_rational())
        for (int i = 0; i < out.rows(); ++i)
            for (int j = 0; j < out.cols(); ++j) out(i, j) = f.reduce(out(i, j));
    return out;
}

Vec apply(const Field& f, const Mat& a, const Vec& x) {
    if (a.cols() != static_cast<int>(x.size())) throw Error(ErrorKind::dimension_mismatch, "matrix-vector shapes");
    Vec out(a.rows());
    for (int k = 0; k < a.cols(); ++k) {
        if (Field::is_zero(x[k])) continue;
        for (int i = 0; i < a.rows(); ++i)
            if (!Field::is_zero(a(i, k))) out[i] += a(i, k) * x[k];
    }
    if (!f.is_rational())
        for (auto& s : out) s = f.reduce(s);
    return out;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return Field::is_zero(s); });
}

Vec to_dense(const SparseVec& v, int n) {
    Vec out(n);
    for (const auto& [i, s] : v) out[i] = s;
    return out;
}

SparseVec to_sparse(const Vec& v) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!Field::is_zero(v[i])) out.emplace_back(i, v[i]);
    return out;
}

void axpy(const Field& f, SparseVec& acc, const Scalar& c, const SparseVec& v) {
    if (Field::is_zero(c) || v.empty()) return;
    SparseVec out;
    out.reserve(acc.size() + v.size());
    size_t i = 0, j = 0;
    while (i < acc.size() || j < v.size()) {
        if (j == v.size() || (i < acc.size() && acc[i].first < v[j].first)) {
            out.push_back(std::move(acc[i++]));
        } else if (i == acc.size() || v[j].first < acc[i].first) {
            out.emplace_back(v[j].first, f.mul(c, v[j].second));
            ++j;
        } else {
            Scalar s = f.add(acc[i].second, f.mul(c, v[j].second));
            if (!Field::is_zero(s)) out.emplace_back(acc[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    acc = std::move(out);
}

Scalar coefficient(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == index) return it->second;
    return Scalar(0);
}

Vec Echelon::reduce(const Field& f, Vec v) const {
    if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::dimension_mismatch, "vector outside ambient space");
    for (size_t r = 0; r < rows_.size(); ++r) {
        int p = pivots_[r];
        if (Field::is_zero(v[p])) continue;
        Scalar factor = v[p];
        const Vec& row = rows_[r];
        for (int j = p; j < n_; ++j)
            if (!Field::is_zero(row[j])) f.sub_mul(v[j], factor, row[j]);
    }
    return v;
}

bool Echelon::insert(const Field& f, Vec v) {
    v = reduce(f, std::move(v));
    int p = -1;
    for (int j = 0; j < n_; ++j)
        if (!Field::is_zero(v[j])) { p = j; break; }
    if (p < 0) return false;
    Scalar inv = f.inv(v[p]);
    for (int j = p; j < n_; ++j)
        if (!Field::is_zero(v[j])) v[j] = f.mul(v[j], inv);
    // keep the basis fully reduced so that it is canonical
    for (auto& row : rows_) {
        if (Field::is_zero(row[p])) continue;
        Scalar factor = row[p];
        for (int j = p; j < n_; ++j)
            if (!Field::is_zero(v[j])) f.sub_mul(row[j], factor, v[j]);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

bool Echelon::contains(const Field& f, const Vec& v) const { return is_zero(reduce(f, v)); }

std::optional<Vec> Echelon::coordinates(const Field& f, const Vec& v) const {
    if (!contains(f, v)) return std::nullopt;
    Vec c(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) c[r] = v[pivots_[r]];
    return c;
}

std::vector<int> Echelon::non_pivots() const {
    std::vector<int> out;
    size_t k = 0;
    for (int j = 0; j < n_; ++j) {
        if (k < pivots_.size() && pivots_[k] == j) { ++k; continue; }
        out.push_back(j);
    }
    return out;
}

Echelon span_of(const Field& f, int ambient, const std::vector<Vec>& vectors) {
    Echelon e(ambient);
    for (const auto& v : vectors) {
        if (e.full()) break;
        e.insert(f, v);
    }
    return e;
}

Echelon intersect(const Field& f, const Echelon& a, const Echelon& b) {
    // Solve sum x_i a_i = sum y_j b_j; the kernel of [A | -B] gives the intersection.
    int n = a.ambient();
    Echelon out(n);
    if (a.rank() == 0 || b.rank() == 0) return out;
    Mat m(n, a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
        for (int r = 0; r < n; ++r) m(r, i) = a.rows()[i][r];
    for (int j = 0; j < b.rank(); ++j)
        for (int r = 0; r < n; ++r) m(r, a.rank() + j) = f.neg(b.rows()[j][r]);
    for (const auto& k : kernel_basis(f, m)) {
        Vec v(n);
        for (int i = 0; i < a.rank(); ++i)
            if (!Field::is_zero(k[i]))
                for (int r = 0; r < n; ++r) v[r] = f.add(v[r], f.mul(k[i], a.rows()[i][r]));
        out.insert(f, std::move(v));
    }
    return out;
}

}  // namespace qhe
