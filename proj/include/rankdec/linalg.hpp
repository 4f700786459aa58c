#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankdec/field.hpp"

namespace rankdec {

/// Dense row-major matrix of canonical field encodings. The field is passed
/// to every algorithm, so one Matrix type serves every tower level.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<std::vector<Elem>>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::vector<Elem> column(std::size_t j) const;

    bool is_zero() const;
    Matrix transpose() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

namespace linalg {

Matrix multiply(const GaloisField& F, const Matrix& a, const Matrix& b);
std::vector<Elem> apply(const GaloisField& F, const Matrix& a, std::span<const Elem> x);
Matrix subtract(const GaloisField& F, const Matrix& a, const Matrix& b);

struct Echelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(const GaloisField& F, Matrix a);
std::size_t rank(const GaloisField& F, const Matrix& a);

/// Null space basis of a (vectors x with a x = 0), one vector per free
/// column in increasing column order; vector j has a 1 at its free column.
std::vector<std::vector<Elem>> kernel(const GaloisField& F, const Matrix& a);

/// Affine solution set {point + span(directions)}.
struct AffineSpace {
    std::vector<Elem> point;
    std::vector<std::vector<Elem>> directions;

    std::size_t dim() const { return directions.size(); }
    std::size_t ambient() const { return point.size(); }
};

/// Solutions of a x = b, or nullopt when inconsistent. Free variables are
/// set to zero in the particular solution.
std::optional<AffineSpace> solve(const GaloisField& F, const Matrix& a, std::span<const Elem> b);

/// Reduced basis of span(vectors) (rows of the RREF).
std::vector<std::vector<Elem>> span_basis(const GaloisField& F, const std::vector<std::vector<Elem>>& vectors,
                                          std::size_t dim);

bool in_span(const GaloisField& F, const std::vector<std::vector<Elem>>& basis, std::span<const Elem> v);

/// Basis of U ∩ V.
std::vector<std::vector<Elem>> intersect(const GaloisField& F, const std::vector<std::vector<Elem>>& u,
                                         const std::vector<std::vector<Elem>>& v, std::size_t dim);

/// Rows h spanning the annihilator: h . x = 0 for all x in span(basis).
Matrix annihilator(const GaloisField& F, const std::vector<std::vector<Elem>>& basis, std::size_t dim);

/// Every point of an affine space over a field of the given order, in
/// mixed-radix order of the direction coefficients. Caller bounds the size.
std::vector<std::vector<Elem>> enumerate(const GaloisField& F, const AffineSpace& space);

/// Pre-factored solver for repeated right-hand sides against one matrix.
class LinearSolver {
public:
    LinearSolver(const GaloisField& F, const Matrix& a);

    std::optional<std::vector<Elem>> particular(std::span<const Elem> b) const;
    const std::vector<std::vector<Elem>>& kernel_basis() const { return kernel_; }
    std::size_t rank() const { return pivots_.size(); }
    bool is_zero_map() const { return pivots_.empty(); }

private:
    const GaloisField* F_;
    std::size_t rows_, cols_;
    Matrix transform_;  // row operations: transform_ * a = rref
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<Elem>> kernel_;
};

}  // namespace linalg
}  // namespace rankdec
