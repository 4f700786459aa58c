#include "rankdec/code.hpp"

#include <cmath>

#include "rankdec/error.hpp"

namespace rankdec {

CodeParams CodeParams::make(std::uint64_t r, unsigned ell, unsigned n, unsigned m, unsigned k, unsigned s) {
    return make(Tower::build(r, ell, n), m, k, s);
}

CodeParams CodeParams::make(TowerPtr tower, unsigned m, unsigned k, unsigned s) {
    const std::uint64_t r = tower->r();
    if (k < 1 || k > r - 1) throw Error(ErrorCode::InvalidParameters, "need 1 <= k <= r-1");
    if (m < 1 || m > tower->n()) throw Error(ErrorCode::InvalidParameters, "need 1 <= m <= n");
    if (s < 1 || s > r - 1) throw Error(ErrorCode::InvalidParameters, "need 1 <= s <= r-1");
    CodeParams p;
    p.tower = std::move(tower);
    p.m = m;
    p.k = k;
    p.s = s;
    return p;
}

DerivedParameters derive_parameters(const CodeParams& p) {
    DerivedParameters d;
    const long r = static_cast<long>(p.r());
    const long n = p.n(), m = p.m, k = p.k, s = p.s;
    d.rate = (static_cast<double>(k) / static_cast<double>(r - 1)) * (static_cast<double>(m) / n);
    d.distance_bound = static_cast<unsigned>(n - m + 1);
    const long num = s * (r - k) * (n - m + 1);
    const long den = r - 1 + s * (r - k);
    d.e_max = num / den - 1;
    d.tau = static_cast<double>(d.e_max) / n;
    d.tau_asymptotic =
        static_cast<double>(s * (r - k)) / static_cast<double>(den) * (1.0 - static_cast<double>(m) / n);
    d.unique_radius = static_cast<unsigned>((n - m) / 2);
    d.mrd = (k == r - 1);
    d.rho = 1.0 / static_cast<double>(r - 1);
    d.rate_limit = rate_limit(d.tau, d.rho);
    return d;
}

bool below_interpolation_bound(const CodeParams& p, long e) {
    if (e < 0) return false;
    const long r = static_cast<long>(p.r());
    const long n = p.n(), m = p.m, k = p.k, s = p.s;
    return e * (r - 1 + s * (r - k)) < s * (r - k) * (n - m + 1);
}

double folded_radius(double rate, std::uint64_t r, unsigned c) {
    const double rr = static_cast<double>(r);
    return c / (c + 1.0) * (1.0 - (rr - 1.0) / (rr - c) * rate);
}

double unique_radius_fraction(double rate) { return (1.0 - rate) / 2.0; }

double crossover_rate(std::uint64_t r, unsigned c) {
    return (static_cast<double>(r) - c) / (static_cast<double>(r) + c);
}

double rate_limit(double tau, double rho) { return (1.0 - tau) * (1.0 - rho * tau); }

Matrix FoldedMatrix::to_fq(const Tower& T) const {
    const unsigned n = T.n();
    Matrix out(rows_, static_cast<std::size_t>(folds_) * n);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < folds_; ++j) {
            const auto c = T.fq_coordinates(at(i, j));
            for (unsigned t = 0; t < n; ++t) out(i, j * n + t) = c[t];
        }
    return out;
}

FoldedMatrix FoldedMatrix::from_fq(const Tower& T, const Matrix& m) {
    const unsigned n = T.n();
    if (m.cols() % n != 0) throw Error(ErrorCode::ShapeMismatch, "column count is not a multiple of n");
    FoldedMatrix out(static_cast<unsigned>(m.rows()), static_cast<unsigned>(m.cols() / n));
    for (unsigned i = 0; i < out.rows(); ++i)
        for (unsigned j = 0; j < out.folds(); ++j) {
            auto row = m.row(i).subspan(static_cast<std::size_t>(j) * n, n);
            for (auto x : row)
                if (x >= T.q()) throw Error(ErrorCode::ParseError, "matrix entry outside F_q");
            out.at(i, j) = T.from_fq_coordinates(row);
        }
    return out;
}

Codeword encode(const CodeParams& p, const MessagePoly& f) {
    if (f.m() != p.m) throw Error(ErrorCode::ShapeMismatch, "message has wrong number of blocks");
    for (unsigned v = 0; v < f.m(); ++v)
        if (f.blocks[v].degree() >= static_cast<int>(p.k))
            throw Error(ErrorCode::DegreeViolation, "block " + std::to_string(v) + " has degree >= k");
    const Tower& T = *p.tower;
    Codeword out(p.n(), p.folds());
    for (unsigned i = 0; i < p.n(); ++i)
        for (unsigned j = 0; j < p.folds(); ++j) out.at(i, j) = eval_bivariate(T, f, T.gamma_pow(j), T.alpha(i));
    return out;
}

FoldedMatrix difference(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b) {
    if (a.rows() != b.rows() || a.folds() != b.folds()) throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
    FoldedMatrix out(a.rows(), a.folds());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.folds(); ++j) out.at(i, j) = T.fqn().sub(a.at(i, j), b.at(i, j));
    return out;
}

FoldedMatrix sum(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b) {
    if (a.rows() != b.rows() || a.folds() != b.folds()) throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
    FoldedMatrix out(a.rows(), a.folds());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.folds(); ++j) out.at(i, j) = T.fqn().add(a.at(i, j), b.at(i, j));
    return out;
}

unsigned rank_fq(const Tower& T, const FoldedMatrix& a) {
    return static_cast<unsigned>(linalg::rank(T.fq(), a.to_fq(T)));
}

unsigned rank_distance(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b) {
    return rank_fq(T, difference(T, a, b));
}

}  // namespace rankdec
