#include "rankdec/bivariate.hpp"

#include <algorithm>

#include "rankdec/error.hpp"

namespace rankdec {

Elem LinearizedPoly::eval(const Tower& T, Elem y) const {
    const GaloisField& F = T.fqn();
    Elem acc = 0;
    for (unsigned i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) acc = F.add(acc, F.mul(coeffs[i], T.frobenius(y, i)));
    return acc;
}

BivariatePoly::BivariatePoly(unsigned k_, unsigned m) : k(k_), blocks(m, UniPoly(std::vector<Elem>(k_, 0))) {}

bool BivariatePoly::is_zero() const {
    for (const auto& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

void BivariatePoly::check_degrees() const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].degree() >= static_cast<int>(k))
            throw Error(ErrorCode::DegreeViolation,
                        "block " + std::to_string(i) + " has degree " + std::to_string(blocks[i].degree()) +
                            " >= k = " + std::to_string(k));
}

std::vector<Elem> BivariatePoly::flatten() const {
    std::vector<Elem> out;
    out.reserve(blocks.size() * k);
    for (const auto& b : blocks)
        for (unsigned i = 0; i < k; ++i) out.push_back(b.coeff(i));
    return out;
}

BivariatePoly BivariatePoly::unflatten(std::span<const Elem> coeffs, unsigned k, unsigned m) {
    if (coeffs.size() != static_cast<std::size_t>(k) * m)
        throw Error(ErrorCode::LengthMismatch, "message needs m*k coefficients");
    BivariatePoly f(k, m);
    for (unsigned v = 0; v < m; ++v)
        for (unsigned i = 0; i < k; ++i) f.blocks[v].coeffs[i] = coeffs[v * k + i];
    return f;
}

bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
    return a.blocks.size() == b.blocks.size() && a.flatten() == b.flatten();
}

UniPoly coeff_twist(const Tower& T, const UniPoly& g, unsigned j) {
    UniPoly out = g;
    for (auto& c : out.coeffs) c = T.frobenius(c, j);
    return out;
}

UniPoly substitute_scaled(const GaloisField& F, const UniPoly& g, Elem c) {
    UniPoly out = g;
    Elem cp = 1;
    for (auto& a : out.coeffs) {
        a = F.mul(a, cp);
        cp = F.mul(cp, c);
    }
    return out;
}

Elem eval_bivariate(const Tower& T, const BivariatePoly& f, Elem x0, Elem y0) {
    const GaloisField& F = T.fqn();
    Elem acc = 0;
    for (unsigned i = 0; i < f.m(); ++i) {
        const Elem fi = poly::eval(F, f.blocks[i], x0);
        if (fi != 0) acc = F.add(acc, F.mul(fi, T.frobenius(y0, i)));
    }
    return acc;
}

BivariatePoly add(const GaloisField& F, const BivariatePoly& a, const BivariatePoly& b) {
    if (a.m() != b.m()) throw Error(ErrorCode::ShapeMismatch, "messages with different block counts");
    BivariatePoly out(std::max(a.k, b.k), a.m());
    for (unsigned i = 0; i < a.m(); ++i) out.blocks[i] = poly::add(F, a.blocks[i], b.blocks[i]);
    return out;
}

BivariatePoly random_message(const Tower& T, unsigned k, unsigned m, Rng& rng) {
    BivariatePoly f(k, m);
    for (auto& b : f.blocks)
        for (auto& c : b.coeffs) c = T.fqn().random(rng);
    return f;
}

}  // namespace rankdec
