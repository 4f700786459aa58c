#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rankdec/rng.hpp"

namespace rankdec {

/// A field element in its canonical integer encoding: an element with
/// coefficient vector (c_0, ..., c_{d-1}) over the base field maps to
/// sum c_i * |base|^i, recursively down to the prime field. Subfield
/// elements therefore keep the same integer in every extension above them.
using Elem = std::uint64_t;

/// Finite field F_p or F_B[z]/(g) for a monic irreducible g over a base
/// field F_B. Immutable after construction; all operations are const.
class GaloisField {
public:
    static constexpr unsigned kMaxDegree = 64;
    static constexpr std::uint64_t kTableLimit = 1u << 16;

    static std::shared_ptr<const GaloisField> prime(std::uint64_t p);

    /// `modulus` is monic and irreducible over `base`, lowest coefficient first.
    static std::shared_ptr<const GaloisField> extension(std::shared_ptr<const GaloisField> base,
                                                        std::vector<Elem> modulus);

    /// Extension by the lexicographically smallest monic irreducible of the
    /// given degree (comparing the coefficient vector from the top down, which
    /// is the same as comparing canonical integers). Degree 1 returns `base`.
    static std::shared_ptr<const GaloisField> canonical_extension(std::shared_ptr<const GaloisField> base,
                                                                  unsigned degree);

    std::uint64_t order() const { return order_; }
    std::uint64_t characteristic() const { return characteristic_; }
    unsigned degree() const { return degree_; }
    unsigned absolute_degree() const { return absolute_degree_; }
    bool is_prime() const { return base_ == nullptr; }
    const GaloisField* base() const { return base_.get(); }
    const std::shared_ptr<const GaloisField>& base_ptr() const { return base_; }
    const std::vector<Elem>& modulus() const { return modulus_; }
    bool contains(Elem a) const { return a < order_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Multiply by an element of the immediate base field (coefficient-wise).
    Elem scale(Elem base_scalar, Elem a) const;

    /// Coefficients over the immediate base field, lowest first.
    std::vector<Elem> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const Elem> coeffs) const;

    /// Coordinates over the prime field (base-p digits, little endian).
    std::vector<Elem> prime_digits(Elem a) const;

    Elem random(Rng& rng) const { return rng.uniform(order_); }
    Elem random_nonzero(Rng& rng) const { return 1 + rng.uniform(order_ - 1); }

    std::uint64_t multiplicative_order(Elem a) const;
    /// Smallest element (canonical integer order) of multiplicative order |F|-1.
    Elem primitive_element() const;

    GaloisField(const GaloisField&) = delete;
    GaloisField& operator=(const GaloisField&) = delete;

private:
    GaloisField() = default;

    Elem mul_poly(Elem a, Elem b) const;
    void build_tables();

    std::shared_ptr<const GaloisField> base_;
    std::vector<Elem> modulus_;
    std::uint64_t order_ = 0;
    std::uint64_t characteristic_ = 0;
    std::uint64_t base_order_ = 0;
    unsigned degree_ = 1;
    unsigned absolute_degree_ = 1;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Prime factors of n without multiplicity, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// (p, a) with r = p^a, or nullopt-like (0, 0) when r is not a prime power.
struct PrimePower {
    std::uint64_t p = 0;
    unsigned a = 0;
};
PrimePower decompose_prime_power(std::uint64_t r);

std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

}  // namespace rankdec

namespace rankdec {

/// F_r for a prime power r, as the canonical extension of F_p.
FieldPtr canonical_field(std::uint64_t r);

}  // namespace rankdec
