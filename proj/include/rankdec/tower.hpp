#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rankdec/field.hpp"
#include "rankdec/poly.hpp"

namespace rankdec {

struct TowerParams {
    std::uint64_t r = 0;  // prime power
    unsigned ell = 1;     // [F_q : F_r]
    unsigned n = 1;       // [F_{q^n} : F_q]
};

/// F_p <= F_r <= F_q <= F_{q^n}. Each level is the canonical extension of
/// the one below it; degree-one levels share the object of the level below.
class Tower {
public:
    static std::shared_ptr<const Tower> build(std::uint64_t r, unsigned ell, unsigned n);
    static std::shared_ptr<const Tower> build(const TowerParams& p) { return build(p.r, p.ell, p.n); }

    const TowerParams& params() const { return params_; }
    std::uint64_t r() const { return params_.r; }
    unsigned ell() const { return params_.ell; }
    unsigned n() const { return params_.n; }
    std::uint64_t q() const { return fq_->order(); }

    const GaloisField& fp() const { return *fp_; }
    const GaloisField& fr() const { return *fr_; }
    const GaloisField& fq() const { return *fq_; }
    const GaloisField& fqn() const { return *fqn_; }
    const FieldPtr& fr_ptr() const { return fr_; }
    const FieldPtr& fqn_ptr() const { return fqn_; }

    /// Primitive element of F_r (smallest in canonical order).
    Elem gamma() const { return gamma_; }
    /// gamma^j for any integer exponent j (reduced mod r-1).
    Elem gamma_pow(long long j) const;

    /// alpha_i = beta^i, i = 0..n-1: the power basis of F_{q^n} over F_q.
    Elem alpha(unsigned i) const { return alpha_[i]; }

    /// a^{q^j}.
    Elem frobenius(Elem a, unsigned j) const;

    /// Dimension of F_{q^n} over F_r.
    unsigned fr_dim() const { return params_.ell * params_.n; }

    /// Coordinates over F_r (base-r digits of the canonical encoding).
    std::vector<Elem> vectorize(Elem a) const;
    void vectorize_into(Elem a, std::span<Elem> out) const;
    Elem devectorize(std::span<const Elem> v) const;

    /// Coordinates over F_q in the power basis (length n).
    std::vector<Elem> fq_coordinates(Elem a) const;
    Elem from_fq_coordinates(std::span<const Elem> c) const;

private:
    Tower() = default;

    TowerParams params_;
    FieldPtr fp_, fr_, fq_, fqn_;
    Elem gamma_ = 0;
    std::vector<Elem> gamma_pows_;
    std::vector<Elem> alpha_;
    std::vector<std::vector<Elem>> frob_;  // frob_[j][i] = beta^{i q^j}
};

using TowerPtr = std::shared_ptr<const Tower>;

/// F_{q^n}[x]/(x^{r-1} - gamma). A field because gcd(r-1, ell n) = 1.
/// Values are coefficient vectors of length r-1 over F_{q^n}.
class ResidueField {
public:
    using Value = std::vector<Elem>;

    explicit ResidueField(TowerPtr tower);

    const Tower& tower() const { return *tower_; }
    unsigned dim() const { return static_cast<unsigned>(tower_->r() - 1); }

    Value zero() const { return Value(dim(), 0); }
    Value one() const;
    Value reduce(const UniPoly& p) const;
    Value add(const Value& a, const Value& b) const;
    Value mul(const Value& a, const Value& b) const;
    Value inv(const Value& a) const;
    /// z(x) -> z(gamma x).
    Value subst_gamma_x(const Value& a) const;

    /// Canonical integer; throws when |F_{q^n}|^{r-1} exceeds 64 bits.
    std::uint64_t encode(const Value& a) const;
    Value decode(std::uint64_t v) const;

    Value random(Rng& rng) const;

private:
    TowerPtr tower_;
    UniPoly modulus_;
};

}  // namespace rankdec
