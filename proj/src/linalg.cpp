#include "rankdec/linalg.hpp"

#include "rankdec/error.hpp"

namespace rankdec {

Matrix Matrix::from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::ShapeMismatch, "row length");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<Elem>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorCode::ShapeMismatch, "column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Elem> Matrix::column(std::size_t j) const {
    std::vector<Elem> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

bool Matrix::is_zero() const {
    for (auto x : data_)
        if (x != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace linalg {

Matrix multiply(const GaloisField& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product dimensions");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Elem x = a(i, t);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(t, j) != 0) out(i, j) = F.add(out(i, j), F.mul(x, b(t, j)));
        }
    return out;
}

std::vector<Elem> apply(const GaloisField& F, const Matrix& a, std::span<const Elem> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector dimensions");
    std::vector<Elem> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && x[j] != 0) acc = F.add(acc, F.mul(a(i, j), x[j]));
        out[i] = acc;
    }
    return out;
}

Matrix subtract(const GaloisField& F, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix difference");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.sub(a(i, j), b(i, j));
    return out;
}

Echelon row_reduce(const GaloisField& F, Matrix a) {
    Echelon ech;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != rank)
            for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
        const Elem inv = F.inv(a(rank, col));
        if (inv != 1)
            for (std::size_t j = col; j < a.cols(); ++j) a(rank, j) = F.mul(a(rank, j), inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank) continue;
            const Elem factor = a(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                if (a(rank, j) != 0) a(i, j) = F.sub(a(i, j), F.mul(factor, a(rank, j)));
        }
        ech.pivots.push_back(col);
        ++rank;
    }
    ech.reduced = std::move(a);
    return ech;
}

std::size_t rank(const GaloisField& F, const Matrix& a) { return row_reduce(F, a).rank(); }

namespace {

std::vector<std::vector<Elem>> kernel_from_echelon(const GaloisField& F, const Echelon& ech, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::vector<Elem>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Elem> x(cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = F.neg(ech.reduced(i, f));
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

std::vector<std::vector<Elem>> kernel(const GaloisField& F, const Matrix& a) {
    return kernel_from_echelon(F, row_reduce(F, a), a.cols());
}

std::optional<AffineSpace> solve(const GaloisField& F, const Matrix& a, std::span<const Elem> b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length");
    const std::size_t n = a.cols();
    Matrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    Echelon ech = row_reduce(F, std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == n) return std::nullopt;
    AffineSpace out;
    out.point.assign(n, 0);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) out.point[ech.pivots[i]] = ech.reduced(i, n);
    out.directions = kernel_from_echelon(F, ech, n);
    return out;
}

std::vector<std::vector<Elem>> span_basis(const GaloisField& F, const std::vector<std::vector<Elem>>& vectors,
                                          std::size_t dim) {
    if (vectors.empty()) return {};
    Echelon ech = row_reduce(F, Matrix::from_rows(vectors, dim));
    std::vector<std::vector<Elem>> out;
    for (std::size_t i = 0; i < ech.rank(); ++i) {
        auto r = ech.reduced.row(i);
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

bool in_span(const GaloisField& F, const std::vector<std::vector<Elem>>& basis, std::span<const Elem> v) {
    std::vector<std::vector<Elem>> all = basis;
    all.emplace_back(v.begin(), v.end());
    const std::size_t dim = v.size();
    const std::size_t before = basis.empty() ? 0 : rank(F, Matrix::from_rows(basis, dim));
    return rank(F, Matrix::from_rows(all, dim)) == before;
}

std::vector<std::vector<Elem>> intersect(const GaloisField& F, const std::vector<std::vector<Elem>>& u,
                                         const std::vector<std::vector<Elem>>& v, std::size_t dim) {
    if (u.empty() || v.empty()) return {};
    // columns: u_1..u_a, -v_1..-v_b ; kernel vectors give sum a_i u_i = sum b_j v_j
    Matrix m(dim, u.size() + v.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = u[j][i];
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, u.size() + j) = F.neg(v[j][i]);
    std::vector<std::vector<Elem>> vecs;
    for (const auto& k : kernel(F, m)) {
        std::vector<Elem> x(dim, 0);
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (k[j] == 0) continue;
            for (std::size_t i = 0; i < dim; ++i) x[i] = F.add(x[i], F.mul(k[j], u[j][i]));
        }
        vecs.push_back(std::move(x));
    }
    return span_basis(F, vecs, dim);
}

Matrix annihilator(const GaloisField& F, const std::vector<std::vector<Elem>>& basis, std::size_t dim) {
    if (basis.empty()) {
        Matrix id(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) id(i, i) = 1;
        return id;
    }
    auto ker = kernel(F, Matrix::from_rows(basis, dim));
    if (ker.empty()) return Matrix(0, dim);
    return Matrix::from_rows(ker, dim);
}

std::vector<std::vector<Elem>> enumerate(const GaloisField& F, const AffineSpace& space) {
    const std::size_t d = space.dim();
    const std::size_t n = space.ambient();
    const std::uint64_t count = checked_pow(F.order(), static_cast<unsigned>(d));
    std::vector<std::vector<Elem>> out;
    out.reserve(count);
    std::vector<Elem> digits(d, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (auto& x : digits) {
            x = t % F.order();
            t /= F.order();
        }
        std::vector<Elem> p = space.point;
        for (std::size_t j = 0; j < d; ++j) {
            if (digits[j] == 0) continue;
            for (std::size_t i = 0; i < n; ++i)
                if (space.directions[j][i] != 0)
                    p[i] = F.add(p[i], F.mul(digits[j], space.directions[j][i]));
        }
        out.push_back(std::move(p));
    }
    return out;
}

LinearSolver::LinearSolver(const GaloisField& F, const Matrix& a) : F_(&F), rows_(a.rows()), cols_(a.cols()) {
    Matrix aug(rows_, cols_ + rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = a(i, j);
        aug(i, cols_ + i) = 1;
    }
    // Only the left block drives pivot selection.
    Echelon ech;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && aug(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(piv, j), aug(rank, j));
        const Elem inv = F.inv(aug(rank, col));
        for (std::size_t j = 0; j < aug.cols(); ++j) aug(rank, j) = F.mul(aug(rank, j), inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == rank || aug(i, col) == 0) continue;
            const Elem factor = aug(i, col);
            for (std::size_t j = 0; j < aug.cols(); ++j)
                if (aug(rank, j) != 0) aug(i, j) = F.sub(aug(i, j), F.mul(factor, aug(rank, j)));
        }
        pivots_.push_back(col);
        ++rank;
    }
    transform_ = Matrix(rows_, rows_);
    Matrix left(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < rows_; ++j) transform_(i, j) = aug(i, cols_ + j);
        for (std::size_t j = 0; j < cols_; ++j) left(i, j) = aug(i, j);
    }
    ech.reduced = std::move(left);
    ech.pivots = pivots_;
    kernel_ = kernel_from_echelon(F, ech, cols_);
}

std::optional<std::vector<Elem>> LinearSolver::particular(std::span<const Elem> b) const {
    if (b.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "right-hand side length");
    const auto c = apply(*F_, transform_, b);
    for (std::size_t i = pivots_.size(); i < rows_; ++i)
        if (c[i] != 0) return std::nullopt;
    std::vector<Elem> x(cols_, 0);
    for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = c[i];
    return x;
}

}  // namespace linalg
}  // namespace rankdec
