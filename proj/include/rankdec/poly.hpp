#pragma once

#include <cstdint>
#include <vector>

#include "rankdec/field.hpp"

namespace rankdec {

/// Dense univariate polynomial, lowest coefficient first. Trailing zeros are
/// allowed; `degree` ignores them and reports -1 for the zero polynomial.
struct UniPoly {
    std::vector<Elem> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<Elem> c) : coeffs(std::move(c)) {}

    int degree() const;
    bool is_zero() const { return degree() < 0; }
    Elem coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
    void trim();

    friend bool operator==(const UniPoly& a, const UniPoly& b);
};

namespace poly {

UniPoly add(const GaloisField& F, const UniPoly& a, const UniPoly& b);
UniPoly sub(const GaloisField& F, const UniPoly& a, const UniPoly& b);
UniPoly mul(const GaloisField& F, const UniPoly& a, const UniPoly& b);
UniPoly scale(const GaloisField& F, Elem c, const UniPoly& a);
Elem eval(const GaloisField& F, const UniPoly& a, Elem x);

/// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const GaloisField& F, const UniPoly& a, const UniPoly& b);
UniPoly mod(const GaloisField& F, const UniPoly& a, const UniPoly& b);
UniPoly mulmod(const GaloisField& F, const UniPoly& a, const UniPoly& b, const UniPoly& m);
UniPoly powmod(const GaloisField& F, const UniPoly& a, std::uint64_t e, const UniPoly& m);

/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(const GaloisField& F, UniPoly a, UniPoly b);

/// Inverse of a modulo m; the zero polynomial when gcd(a, m) != 1.
UniPoly inverse_mod(const GaloisField& F, const UniPoly& a, const UniPoly& m);

/// Rabin's test for a monic polynomial of degree >= 1 over F.
bool is_irreducible(const GaloisField& F, const UniPoly& g);

}  // namespace poly
}  // namespace rankdec
