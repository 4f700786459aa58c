#include "rankdec/poly.hpp"

#include <algorithm>

#include "rankdec/error.hpp"

namespace rankdec {

int UniPoly::degree() const {
    for (std::size_t i = coeffs.size(); i > 0; --i)
        if (coeffs[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

void UniPoly::trim() { coeffs.resize(static_cast<std::size_t>(degree() + 1)); }

bool operator==(const UniPoly& a, const UniPoly& b) {
    const std::size_t len = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < len; ++i)
        if (a.coeff(i) != b.coeff(i)) return false;
    return true;
}

namespace poly {

UniPoly add(const GaloisField& F, const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = F.add(a.coeff(i), b.coeff(i));
    return out;
}

UniPoly sub(const GaloisField& F, const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = F.sub(a.coeff(i), b.coeff(i));
    return out;
}

UniPoly mul(const GaloisField& F, const UniPoly& a, const UniPoly& b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da < 0 || db < 0) return {};
    UniPoly out(std::vector<Elem>(static_cast<std::size_t>(da + db + 1), 0));
    for (int i = 0; i <= da; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j <= db; ++j)
            out.coeffs[i + j] = F.add(out.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
    return out;
}

UniPoly scale(const GaloisField& F, Elem c, const UniPoly& a) {
    UniPoly out = a;
    for (auto& x : out.coeffs) x = F.mul(c, x);
    return out;
}

Elem eval(const GaloisField& F, const UniPoly& a, Elem x) {
    Elem acc = 0;
    for (std::size_t i = a.coeffs.size(); i > 0; --i) acc = F.add(F.mul(acc, x), a.coeffs[i - 1]);
    return acc;
}

std::pair<UniPoly, UniPoly> divmod(const GaloisField& F, const UniPoly& a, const UniPoly& b) {
    const int db = b.degree();
    if (db < 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    UniPoly rem = a;
    rem.trim();
    int dr = rem.degree();
    UniPoly quot(std::vector<Elem>(dr >= db ? static_cast<std::size_t>(dr - db + 1) : 0, 0));
    const Elem lead_inv = F.inv(b.coeffs[db]);
    while (dr >= db) {
        const Elem c = F.mul(rem.coeffs[dr], lead_inv);
        quot.coeffs[dr - db] = c;
        for (int j = 0; j <= db; ++j)
            rem.coeffs[dr - db + j] = F.sub(rem.coeffs[dr - db + j], F.mul(c, b.coeffs[j]));
        dr = rem.degree();
    }
    rem.trim();
    return {quot, rem};
}

UniPoly mod(const GaloisField& F, const UniPoly& a, const UniPoly& b) { return divmod(F, a, b).second; }

UniPoly mulmod(const GaloisField& F, const UniPoly& a, const UniPoly& b, const UniPoly& m) {
    return mod(F, mul(F, a, b), m);
}

UniPoly powmod(const GaloisField& F, const UniPoly& a, std::uint64_t e, const UniPoly& m) {
    UniPoly result({1});
    result = mod(F, result, m);
    UniPoly base = mod(F, a, m);
    while (e > 0) {
        if (e & 1) result = mulmod(F, result, base, m);
        e >>= 1;
        if (e > 0) base = mulmod(F, base, base, m);
    }
    return result;
}

UniPoly gcd(const GaloisField& F, UniPoly a, UniPoly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        UniPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return scale(F, F.inv(a.coeffs[a.degree()]), a);
}

UniPoly inverse_mod(const GaloisField& F, const UniPoly& a, const UniPoly& m) {
    // Extended Euclid tracking only the coefficient of a.
    UniPoly r0 = m;
    UniPoly r1 = mod(F, a, m);
    r0.trim();
    UniPoly s0, s1({1});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(F, r0, r1);
        UniPoly s = sub(F, s0, mul(F, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) return {};
    UniPoly inv = scale(F, F.inv(r0.coeffs[0]), s0);
    return mod(F, inv, m);
}

bool is_irreducible(const GaloisField& F, const UniPoly& g) {
    const int d = g.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    const UniPoly x({0, 1});
    const std::uint64_t q = F.order();
    // frob[j] = x^{q^j} mod g
    std::vector<UniPoly> frob{mod(F, x, g)};
    for (int j = 1; j <= d; ++j) frob.push_back(powmod(F, frob.back(), q, g));
    if (!(mod(F, sub(F, frob[d], x), g).is_zero())) return false;
    for (auto t : prime_factors(static_cast<std::uint64_t>(d))) {
        const UniPoly h = sub(F, frob[d / t], x);
        if (gcd(F, h, g).degree() != 0) return false;
    }
    return true;
}

}  // namespace poly
}  // namespace rankdec
