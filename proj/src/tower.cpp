#include "rankdec/tower.hpp"

#include <numeric>

#include "rankdec/error.hpp"

namespace rankdec {

TowerPtr Tower::build(std::uint64_t r, unsigned ell, unsigned n) {
    const PrimePower pp = decompose_prime_power(r);
    if (pp.p == 0) throw Error(ErrorCode::NotPrimePower, "r = " + std::to_string(r) + " is not a prime power");
    if (ell == 0 || n == 0) throw Error(ErrorCode::InvalidParameters, "ell and n must be positive");
    if (std::gcd<std::uint64_t, std::uint64_t>(r - 1, static_cast<std::uint64_t>(ell) * n) != 1)
        throw Error(ErrorCode::GcdViolation, "gcd(r-1, ell*n) = " +
                                                 std::to_string(std::gcd<std::uint64_t, std::uint64_t>(
                                                     r - 1, static_cast<std::uint64_t>(ell) * n)) +
                                                 " != 1");
    // Validate the encoding size before any search.
    checked_pow(r, ell * n);

    std::shared_ptr<Tower> T(new Tower());
    T->params_ = {r, ell, n};
    T->fp_ = GaloisField::prime(pp.p);
    T->fr_ = GaloisField::canonical_extension(T->fp_, pp.a);
    T->fq_ = GaloisField::canonical_extension(T->fr_, ell);
    T->fqn_ = GaloisField::canonical_extension(T->fq_, n);
    T->gamma_ = T->fr_->primitive_element();

    const GaloisField& F = *T->fqn_;
    T->gamma_pows_.resize(r - 1);
    T->gamma_pows_[0] = 1;
    for (std::uint64_t j = 1; j + 1 < r; ++j) T->gamma_pows_[j] = F.mul(T->gamma_pows_[j - 1], T->gamma_);

    if (r > 2) {
        std::vector<Elem> g(r, 0);
        g[0] = F.neg(T->gamma_);
        g[r - 1] = 1;
        if (!poly::is_irreducible(F, UniPoly(g)))
            throw Error(ErrorCode::GcdViolation, "x^{r-1} - gamma is reducible over F_{q^n}");
    }

    const Elem beta = n > 1 ? T->fq_->order() : 0;
    T->alpha_.resize(n);
    T->alpha_[0] = 1;
    for (unsigned i = 1; i < n; ++i) T->alpha_[i] = F.mul(T->alpha_[i - 1], beta);

    if (n > 1) {
        T->frob_.resize(n);
        Elem beta_qj = beta;
        for (unsigned j = 0; j < n; ++j) {
            auto& row = T->frob_[j];
            row.resize(n);
            row[0] = 1;
            for (unsigned i = 1; i < n; ++i) row[i] = F.mul(row[i - 1], beta_qj);
            beta_qj = F.pow(beta_qj, T->fq_->order());
        }
    }
    return T;
}

Elem Tower::gamma_pow(long long j) const {
    const long long period = static_cast<long long>(params_.r - 1);
    long long e = j % period;
    if (e < 0) e += period;
    return gamma_pows_[static_cast<std::size_t>(e)];
}

Elem Tower::frobenius(Elem a, unsigned j) const {
    const unsigned n = params_.n;
    if (n == 1 || j % n == 0 || a == 0) return a;
    const auto& row = frob_[j % n];
    const GaloisField& F = *fqn_;
    const std::uint64_t q = fq_->order();
    Elem out = 0;
    for (unsigned i = 0; i < n && a; ++i) {
        const Elem c = a % q;
        a /= q;
        if (c != 0) out = F.add(out, F.scale(c, row[i]));
    }
    return out;
}

void Tower::vectorize_into(Elem a, std::span<Elem> out) const {
    if (out.size() != fr_dim()) throw Error(ErrorCode::LengthMismatch, "vectorize output length");
    const std::uint64_t r = params_.r;
    for (auto& d : out) {
        d = a % r;
        a /= r;
    }
}

std::vector<Elem> Tower::vectorize(Elem a) const {
    std::vector<Elem> out(fr_dim());
    vectorize_into(a, out);
    return out;
}

Elem Tower::devectorize(std::span<const Elem> v) const {
    if (v.size() != fr_dim()) throw Error(ErrorCode::LengthMismatch, "devectorize expects ell*n coordinates");
    Elem out = 0;
    for (std::size_t i = v.size(); i > 0; --i) {
        if (v[i - 1] >= params_.r) throw Error(ErrorCode::LengthMismatch, "coordinate outside F_r");
        out = out * params_.r + v[i - 1];
    }
    return out;
}

std::vector<Elem> Tower::fq_coordinates(Elem a) const {
    std::vector<Elem> out(params_.n);
    const std::uint64_t q = fq_->order();
    for (auto& c : out) {
        c = a % q;
        a /= q;
    }
    return out;
}

Elem Tower::from_fq_coordinates(std::span<const Elem> c) const {
    if (c.size() != params_.n) throw Error(ErrorCode::LengthMismatch, "expected n F_q coordinates");
    const std::uint64_t q = fq_->order();
    Elem out = 0;
    for (std::size_t i = c.size(); i > 0; --i) out = out * q + c[i - 1];
    return out;
}

ResidueField::ResidueField(TowerPtr tower) : tower_(std::move(tower)) {
    const unsigned d = dim();
    modulus_.coeffs.assign(d + 1, 0);
    modulus_.coeffs[0] = tower_->fqn().neg(tower_->gamma());
    modulus_.coeffs[d] = 1;
}

ResidueField::Value ResidueField::one() const {
    Value v = zero();
    v[0] = 1;
    return v;
}

ResidueField::Value ResidueField::reduce(const UniPoly& p) const {
    // x^{d + t} = gamma * x^t
    const GaloisField& F = tower_->fqn();
    const unsigned d = dim();
    Value out = zero();
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] == 0) continue;
        const Elem c = F.mul(p.coeffs[i], tower_->gamma_pow(static_cast<long long>(i / d)));
        out[i % d] = F.add(out[i % d], c);
    }
    return out;
}

ResidueField::Value ResidueField::add(const Value& a, const Value& b) const {
    const GaloisField& F = tower_->fqn();
    Value out(dim());
    for (unsigned i = 0; i < dim(); ++i) out[i] = F.add(a[i], b[i]);
    return out;
}

ResidueField::Value ResidueField::mul(const Value& a, const Value& b) const {
    return reduce(poly::mul(tower_->fqn(), UniPoly(a), UniPoly(b)));
}

ResidueField::Value ResidueField::inv(const Value& a) const {
    UniPoly pa(a);
    if (pa.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in residue field");
    UniPoly inv = poly::inverse_mod(tower_->fqn(), pa, modulus_);
    Value out = zero();
    for (std::size_t i = 0; i < inv.coeffs.size() && i < out.size(); ++i) out[i] = inv.coeffs[i];
    return out;
}

ResidueField::Value ResidueField::subst_gamma_x(const Value& a) const {
    const GaloisField& F = tower_->fqn();
    Value out(dim());
    for (unsigned i = 0; i < dim(); ++i) out[i] = F.mul(a[i], tower_->gamma_pow(i));
    return out;
}

std::uint64_t ResidueField::encode(const Value& a) const {
    const std::uint64_t Q = tower_->fqn().order();
    checked_pow(Q, dim());
    std::uint64_t out = 0;
    for (std::size_t i = a.size(); i > 0; --i) out = out * Q + a[i - 1];
    return out;
}

ResidueField::Value ResidueField::decode(std::uint64_t v) const {
    const std::uint64_t Q = tower_->fqn().order();
    Value out(dim());
    for (auto& c : out) {
        c = v % Q;
        v /= Q;
    }
    return out;
}

ResidueField::Value ResidueField::random(Rng& rng) const {
    Value out(dim());
    for (auto& c : out) c = tower_->fqn().random(rng);
    return out;
}

}  // namespace rankdec
