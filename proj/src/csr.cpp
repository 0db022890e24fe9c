#include "sgsp/csr.hpp"

#include <algorithm>
#include <cassert>

#include "sgsp/error.hpp"

namespace sgsp {

CsrMatrix CsrMatrix::from_triplets(std::size_t dim, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    CsrMatrix m(dim);
    m.cols_.reserve(entries.size());
    m.values_.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        const auto& e = entries[i];
        if (e.row >= dim || e.col >= dim) {
            throw Error(ErrorKind::invalid_argument, "matrix entry index out of range");
        }
        double sum = 0.0;
        std::size_t j = i;
        while (j < entries.size() && entries[j].row == e.row && entries[j].col == e.col) {
            sum += entries[j].value;
            ++j;
        }
        if (sum != 0.0) {
            m.cols_.push_back(e.col);
            m.values_.push_back(sum);
            ++m.row_ptr_[e.row + 1];
        }
        i = j;
    }
    for (std::size_t r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

CsrMatrix CsrMatrix::from_dense(std::size_t dim, std::span<const double> dense) {
    if (dense.size() != dim * dim) {
        throw Error(ErrorKind::invalid_argument, "dense matrix size does not match dimension");
    }
    CsrMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double v = dense[i * dim + j];
            if (v != 0.0) {
                m.cols_.push_back(static_cast<std::uint32_t>(j));
                m.values_.push_back(v);
            }
        }
        m.row_ptr_[i + 1] = m.cols_.size();
    }
    return m;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const noexcept {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
    if (it == cols.end() || *it != j) return 0.0;
    return values_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y, double scale) const {
    assert(x.size() == dim_ && y.size() == dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += values_[p] * x[cols_[p]];
        y[i] = scale * acc;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x, double scale) const {
    std::vector<double> y(dim_);
    multiply(x, y, scale);
    return y;
}

std::vector<double> CsrMatrix::to_dense() const {
    std::vector<double> d(dim_ * dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d[i * dim_ + cols_[p]] = values_[p];
    }
    return d;
}

bool CsrMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            if (at(cols_[p], i) != values_[p]) return false;
        }
    }
    return true;
}

CsrMatrix CsrMatrix::permuted(std::span<const std::uint32_t> perm) const {
    assert(perm.size() == dim_);
    std::vector<std::uint32_t> inverse(dim_);
    for (std::size_t i = 0; i < dim_; ++i) inverse[perm[i]] = static_cast<std::uint32_t>(i);
    CsrMatrix m(dim_);
    m.cols_.reserve(nnz());
    m.values_.reserve(nnz());
    std::vector<std::pair<std::uint32_t, double>> row;
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t src = perm[i];
        row.clear();
        for (std::size_t p = row_ptr_[src]; p < row_ptr_[src + 1]; ++p) {
            row.emplace_back(inverse[cols_[p]], values_[p]);
        }
        std::sort(row.begin(), row.end());
        for (auto [c, v] : row) {
            m.cols_.push_back(c);
            m.values_.push_back(v);
        }
        m.row_ptr_[i + 1] = m.cols_.size();
    }
    return m;
}

CsrMatrix CsrMatrix::leading(std::size_t dim) const {
    assert(dim <= dim_);
    CsrMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1] && cols_[p] < dim; ++p) {
            m.cols_.push_back(cols_[p]);
            m.values_.push_back(values_[p]);
        }
        m.row_ptr_[i + 1] = m.cols_.size();
    }
    return m;
}

CsrMatrix CsrMatrix::padded(std::size_t dim) const {
    assert(dim >= dim_);
    CsrMatrix m = *this;
    m.dim_ = dim;
    m.row_ptr_.resize(dim + 1, m.cols_.size());
    return m;
}

CsrMatrix CsrMatrix::combine(double a, const CsrMatrix& other, double b) const {
    if (other.dim_ != dim_) throw Error(ErrorKind::incompatible_grid, "matrix dimensions differ");
    CsrMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::size_t p = row_ptr_[i], q = other.row_ptr_[i];
        const std::size_t pe = row_ptr_[i + 1], qe = other.row_ptr_[i + 1];
        while (p < pe || q < qe) {
            std::uint32_t c;
            double v;
            if (q >= qe || (p < pe && cols_[p] < other.cols_[q])) {
                c = cols_[p];
                v = a * values_[p++];
            } else if (p >= pe || other.cols_[q] < cols_[p]) {
                c = other.cols_[q];
                v = b * other.values_[q++];
            } else {
                c = cols_[p];
                v = a * values_[p++] + b * other.values_[q++];
            }
            if (v != 0.0) {
                m.cols_.push_back(c);
                m.values_.push_back(v);
            }
        }
        m.row_ptr_[i + 1] = m.cols_.size();
    }
    return m;
}

}  // namespace sgsp
