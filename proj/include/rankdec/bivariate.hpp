#pragma once

#include <vector>

#include "rankdec/poly.hpp"
#include "rankdec/tower.hpp"

namespace rankdec {

/// sum_i a_i y^{q^i} over F_{q^n}.
struct LinearizedPoly {
    std::vector<Elem> coeffs;

    Elem eval(const Tower& T, Elem y) const;
};

/// f(x, y) = sum_{i < m} f_i(x) y^{q^i} with every deg f_i < k.
struct BivariatePoly {
    unsigned k = 0;
    std::vector<UniPoly> blocks;

    BivariatePoly() = default;
    BivariatePoly(unsigned k_, unsigned m);

    unsigned m() const { return static_cast<unsigned>(blocks.size()); }
    bool is_zero() const;
    /// Throws DegreeViolation when a block has degree >= k.
    void check_degrees() const;

    /// Blocks in order, each block's k coefficients low-degree first.
    std::vector<Elem> flatten() const;
    static BivariatePoly unflatten(std::span<const Elem> coeffs, unsigned k, unsigned m);

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b);
    friend bool operator<(const BivariatePoly& a, const BivariatePoly& b) { return a.flatten() < b.flatten(); }
};

using MessagePoly = BivariatePoly;

/// g^{(j)}: every coefficient raised to the q^j power.
UniPoly coeff_twist(const Tower& T, const UniPoly& g, unsigned j);

/// g(c x) for a scalar c.
UniPoly substitute_scaled(const GaloisField& F, const UniPoly& g, Elem c);

/// sum_i f_i(x0) y0^{q^i}.
Elem eval_bivariate(const Tower& T, const BivariatePoly& f, Elem x0, Elem y0);

BivariatePoly add(const GaloisField& F, const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly random_message(const Tower& T, unsigned k, unsigned m, Rng& rng);

}  // namespace rankdec
