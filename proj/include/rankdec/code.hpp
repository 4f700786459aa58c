#pragma once

#include <cstdint>
#include <vector>

#include "rankdec/bivariate.hpp"
#include "rankdec/linalg.hpp"
#include "rankdec/tower.hpp"

namespace rankdec {

/// Folded code parameters. The tower fixes r, ell and n; m is the number of
/// message blocks, k the x-degree bound and s the interpolation fold.
struct CodeParams {
    TowerPtr tower;
    unsigned m = 1;
    unsigned k = 1;
    unsigned s = 1;

    static CodeParams make(std::uint64_t r, unsigned ell, unsigned n, unsigned m, unsigned k, unsigned s);
    static CodeParams make(TowerPtr tower, unsigned m, unsigned k, unsigned s);

    std::uint64_t r() const { return tower->r(); }
    unsigned ell() const { return tower->ell(); }
    unsigned n() const { return tower->n(); }
    std::uint64_t q() const { return tower->q(); }
    unsigned folds() const { return static_cast<unsigned>(r() - 1); }
    unsigned t() const { return folds() * n(); }
    unsigned c() const { return static_cast<unsigned>(r() - k); }
    /// F_r-dimension of one message block.
    unsigned block_dim() const { return ell() * n() * k; }
    unsigned message_dim() const { return block_dim() * m; }
};

struct DerivedParameters {
    double rate = 0;
    unsigned distance_bound = 0;  // n - m + 1
    long e_max = 0;
    double tau = 0;               // e_max / n
    double tau_asymptotic = 0;    // s(r-k)/(r-1+s(r-k)) * (1 - m/n)
    unsigned unique_radius = 0;   // floor((n - m) / 2) errors
    bool mrd = false;
    double rho = 0;               // n / t
    double rate_limit = 0;        // (1 - tau)(1 - rho tau)
};

DerivedParameters derive_parameters(const CodeParams& p);

/// e < s(r-k)(n-m+1) / (r-1+s(r-k)), evaluated in integers.
bool below_interpolation_bound(const CodeParams& p, long e);

/// Radius for s = r-1, k = r-c: c/(c+1) * (1 - (r-1)/(r-c) R).
double folded_radius(double rate, std::uint64_t r, unsigned c);
double unique_radius_fraction(double rate);
/// Largest rate at which folded_radius beats (1-R)/2: (r-c)/(r+c).
double crossover_rate(std::uint64_t r, unsigned c);
/// Rate limit (1-tau)(1-rho tau) for a list-decodable code with ratio rho.
double rate_limit(double tau, double rho);

/// n x (r-1) array over F_{q^n}; the same data as an n x (r-1)n matrix over
/// F_q when every entry is expanded in the power basis.
class FoldedMatrix {
public:
    FoldedMatrix() = default;
    FoldedMatrix(unsigned rows, unsigned folds) : rows_(rows), folds_(folds), data_(rows * folds, 0) {}

    unsigned rows() const { return rows_; }
    unsigned folds() const { return folds_; }
    Elem& at(unsigned i, unsigned j) { return data_[i * folds_ + j]; }
    Elem at(unsigned i, unsigned j) const { return data_[i * folds_ + j]; }

    Matrix to_fq(const Tower& T) const;
    static FoldedMatrix from_fq(const Tower& T, const Matrix& m);

    friend bool operator==(const FoldedMatrix& a, const FoldedMatrix& b) = default;

private:
    unsigned rows_ = 0;
    unsigned folds_ = 0;
    std::vector<Elem> data_;
};

using Codeword = FoldedMatrix;
using ReceivedWord = FoldedMatrix;

/// Entry (i, j) = f(gamma^j, alpha_i).
Codeword encode(const CodeParams& p, const MessagePoly& f);

FoldedMatrix difference(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b);
FoldedMatrix sum(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b);

/// rank over F_q of A - B.
unsigned rank_distance(const Tower& T, const FoldedMatrix& a, const FoldedMatrix& b);
unsigned rank_fq(const Tower& T, const FoldedMatrix& a);

}  // namespace rankdec
