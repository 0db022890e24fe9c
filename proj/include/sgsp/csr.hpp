#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sgsp {

/// Square sparse matrix in compressed-row form with sorted column indices.
///
/// Used both for graph adjacency and for the value matrices of step graphons,
/// which are sparse whenever they come from graphs.
class CsrMatrix {
public:
    struct Entry {
        std::uint32_t row;
        std::uint32_t col;
        double value;
    };

    CsrMatrix() = default;
    explicit CsrMatrix(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0) {}

    /// Builds from unsorted triplets; duplicate coordinates are summed and
    /// exact zeros dropped.
    static CsrMatrix from_triplets(std::size_t dim, std::vector<Entry> entries);
    /// Row-major dense input of size dim*dim; exact zeros dropped.
    static CsrMatrix from_dense(std::size_t dim, std::span<const double> dense);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t nnz() const noexcept { return cols_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t i) const noexcept {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> row_values(std::size_t i) const noexcept {
        return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const std::uint32_t> cols() const noexcept { return cols_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entry (i, j), zero when not stored. O(log row length).
    double at(std::size_t i, std::size_t j) const noexcept;

    /// y = scale * M x.
    void multiply(std::span<const double> x, std::span<double> y, double scale = 1.0) const;
    std::vector<double> multiply(std::span<const double> x, double scale = 1.0) const;

    std::vector<double> to_dense() const;
    bool is_symmetric() const;

    /// M[perm[i]][perm[j]] at (i, j).
    CsrMatrix permuted(std::span<const std::uint32_t> perm) const;
    /// Leading principal submatrix of size `dim`.
    CsrMatrix leading(std::size_t dim) const;
    /// Zero-extended to a larger dimension.
    CsrMatrix padded(std::size_t dim) const;
    /// Entry-wise a*this + b*other, exact zeros dropped.
    CsrMatrix combine(double a, const CsrMatrix& other, double b) const;

    friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

}  // namespace sgsp
