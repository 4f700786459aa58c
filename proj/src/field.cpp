#include "rankdec/field.hpp"

#include <array>
#include <limits>

#include "rankdec/error.hpp"
#include "rankdec/poly.hpp"

namespace rankdec {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrimePower: return "NotPrimePower";
        case ErrorCode::GcdViolation: return "GcdViolation";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DegreeViolation: return "DegreeViolation";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::RankTooLarge: return "RankTooLarge";
        case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
        case ErrorCode::InvalidParameters: return "InvalidParameters";
        case ErrorCode::ParameterInfeasible: return "ParameterInfeasible";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::EmptyBlock: return "EmptyBlock";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

PrimePower decompose_prime_power(std::uint64_t r) {
    if (r < 2) return {};
    auto factors = prime_factors(r);
    if (factors.size() != 1) return {};
    PrimePower pp{factors[0], 0};
    while (r > 1) {
        r /= pp.p;
        ++pp.a;
    }
    return pp;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
            throw Error(ErrorCode::InvalidParameters, "field size overflows 64-bit encoding");
        out *= base;
    }
    return out;
}

FieldPtr GaloisField::prime(std::uint64_t p) {
    if (p < 2 || prime_factors(p).size() != 1 || prime_factors(p)[0] != p)
        throw Error(ErrorCode::NotPrimePower, std::to_string(p) + " is not prime");
    if (p > (1ULL << 31)) throw Error(ErrorCode::InvalidParameters, "prime too large");
    std::shared_ptr<GaloisField> F(new GaloisField());
    F->order_ = p;
    F->characteristic_ = p;
    F->base_order_ = p;
    F->degree_ = 1;
    F->absolute_degree_ = 1;
    F->modulus_ = {0, 1};
    F->build_tables();
    return F;
}

FieldPtr GaloisField::extension(FieldPtr base, std::vector<Elem> modulus) {
    if (!base || modulus.size() < 2 || modulus.back() != 1)
        throw Error(ErrorCode::InvalidParameters, "extension modulus must be monic of degree >= 1");
    const unsigned d = static_cast<unsigned>(modulus.size() - 1);
    if (d > kMaxDegree) throw Error(ErrorCode::InvalidParameters, "extension degree too large");
    if (!poly::is_irreducible(*base, UniPoly(modulus)))
        throw Error(ErrorCode::InvalidParameters, "extension modulus is reducible");
    std::shared_ptr<GaloisField> F(new GaloisField());
    F->base_ = base;
    F->modulus_ = std::move(modulus);
    F->base_order_ = base->order();
    F->degree_ = d;
    F->order_ = checked_pow(base->order(), d);
    F->characteristic_ = base->characteristic();
    F->absolute_degree_ = base->absolute_degree() * d;
    F->build_tables();
    return F;
}

FieldPtr GaloisField::canonical_extension(FieldPtr base, unsigned degree) {
    if (degree == 0) throw Error(ErrorCode::InvalidParameters, "extension degree must be positive");
    if (degree == 1) return base;
    const std::uint64_t count = checked_pow(base->order(), degree);
    std::vector<Elem> g(degree + 1, 0);
    g[degree] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t t = idx;
        for (unsigned i = 0; i < degree; ++i) {
            g[i] = t % base->order();
            t /= base->order();
        }
        if (g[0] == 0) continue;
        if (poly::is_irreducible(*base, UniPoly(g))) return extension(base, g);
    }
    throw Error(ErrorCode::InvalidParameters, "no irreducible polynomial found");
}

void GaloisField::build_tables() {
    if (order_ > kTableLimit) return;
    const Elem g = primitive_element();
    const std::uint64_t n = order_ - 1;
    exp_.assign(2 * n, 0);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x);
        exp_[i + n] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(i);
        x = mul_poly(x, g);
    }
}

Elem GaloisField::add(Elem a, Elem b) const {
    if (is_prime()) {
        const Elem s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    if (base_->is_prime()) {
        const std::uint64_t p = base_order_;
        Elem out = 0, place = 1;
        while (a | b) {
            Elem s = a % p + b % p;
            if (s >= p) s -= p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        return out;
    }
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_ && (a | b); ++i) {
        out += base_->add(a % base_order_, b % base_order_) * place;
        place *= base_order_;
        a /= base_order_;
        b /= base_order_;
    }
    return out;
}

Elem GaloisField::neg(Elem a) const {
    if (is_prime()) return a == 0 ? 0 : order_ - a;
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_ && a; ++i) {
        out += base_->neg(a % base_order_) * place;
        place *= base_order_;
        a /= base_order_;
    }
    return out;
}

Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem GaloisField::scale(Elem c, Elem a) const {
    if (is_prime()) return mul(c, a);
    if (c == 0) return 0;
    if (c == 1) return a;
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < degree_ && a; ++i) {
        out += base_->mul(c, a % base_order_) * place;
        place *= base_order_;
        a /= base_order_;
    }
    return out;
}

Elem GaloisField::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

Elem GaloisField::mul_poly(Elem a, Elem b) const {
    if (is_prime()) return (a * b) % order_;
    const GaloisField& B = *base_;
    const unsigned d = degree_;
    std::array<Elem, kMaxDegree> da{}, db{};
    std::array<Elem, 2 * kMaxDegree> prod{};
    for (unsigned i = 0; i < d; ++i) {
        da[i] = a % base_order_;
        a /= base_order_;
        db[i] = b % base_order_;
        b /= base_order_;
    }
    for (unsigned i = 0; i < d; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j) {
            if (db[j] == 0) continue;
            prod[i + j] = B.add(prod[i + j], B.mul(da[i], db[j]));
        }
    }
    for (unsigned i = 2 * d - 2; i >= d; --i) {
        const Elem c = prod[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < d; ++j)
            if (modulus_[j] != 0) prod[i - d + j] = B.sub(prod[i - d + j], B.mul(c, modulus_[j]));
    }
    Elem out = 0;
    for (unsigned i = d; i > 0; --i) out = out * base_order_ + prod[i - 1];
    return out;
}

Elem GaloisField::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log_.empty()) {
        const std::uint64_t n = order_ - 1;
        return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * (e % n)) % n)];
    }
    e %= (order_ - 1);
    Elem result = 1, base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

Elem GaloisField::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (!log_.empty()) {
        const std::uint64_t n = order_ - 1;
        return exp_[(n - log_[a]) % n];
    }
    return pow(a, order_ - 2);
}

std::vector<Elem> GaloisField::coefficients(Elem a) const {
    std::vector<Elem> out(degree_);
    if (is_prime()) {
        out[0] = a;
        return out;
    }
    for (unsigned i = 0; i < degree_; ++i) {
        out[i] = a % base_order_;
        a /= base_order_;
    }
    return out;
}

Elem GaloisField::from_coefficients(std::span<const Elem> coeffs) const {
    if (coeffs.size() != degree_) throw Error(ErrorCode::LengthMismatch, "coefficient vector length");
    Elem out = 0;
    for (std::size_t i = coeffs.size(); i > 0; --i) out = out * base_order_ + coeffs[i - 1];
    return out;
}

std::vector<Elem> GaloisField::prime_digits(Elem a) const {
    std::vector<Elem> out(absolute_degree_);
    for (auto& d : out) {
        d = a % characteristic_;
        a /= characteristic_;
    }
    return out;
}

std::uint64_t GaloisField::multiplicative_order(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
    std::uint64_t ord = order_ - 1;
    for (auto t : prime_factors(order_ - 1)) {
        while (ord % t == 0 && pow(a, ord / t) == 1) ord /= t;
    }
    return ord;
}

Elem GaloisField::primitive_element() const {
    if (order_ == 2) return 1;
    const auto factors = prime_factors(order_ - 1);
    for (Elem a = 1; a < order_; ++a) {
        bool ok = true;
        for (auto t : factors) {
            // mul_poly-based pow so this also works while tables are being built
            Elem result = 1, base = a;
            std::uint64_t e = (order_ - 1) / t;
            while (e > 0) {
                if (e & 1) result = mul_poly(result, base);
                e >>= 1;
                if (e > 0) base = mul_poly(base, base);
            }
            if (result == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw Error(ErrorCode::InvalidParameters, "no primitive element");
}

}  // namespace rankdec

namespace rankdec {

FieldPtr canonical_field(std::uint64_t r) {
    const PrimePower pp = decompose_prime_power(r);
    if (pp.p == 0) throw Error(ErrorCode::NotPrimePower, std::to_string(r) + " is not a prime power");
    return GaloisField::canonical_extension(GaloisField::prime(pp.p), pp.a);
}

}  // namespace rankdec
