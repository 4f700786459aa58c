#include "rankdec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "rankdec/error.hpp"

namespace rankdec {

bool InterpolationPoly::is_zero() const {
    for (const auto& a : a0)
        if (!a.is_zero()) return false;
    for (const auto& w : aw)
        for (const auto& a : w)
            if (!a.is_zero()) return false;
    return true;
}

InterpolationPoly interpolate(const ReceivedWord& y, unsigned e, const CodeParams& p) {
    if (!below_interpolation_bound(p, e))
        throw Error(ErrorCode::RadiusTooLarge,
                    "e = " + std::to_string(e) + " violates e < s(r-k)(n-m+1)/(r-1+s(r-k))");
    const Tower& T = *p.tower;
    const GaloisField& F = T.fqn();
    const unsigned n = p.n(), folds = p.folds(), s = p.s;
    if (y.rows() != n || y.folds() != folds) throw Error(ErrorCode::ShapeMismatch, "received word shape");

    const unsigned a0_count = n - e;
    const unsigned aw_count = n - e - p.m + 1;
    const unsigned a0_deg = folds;
    const unsigned aw_deg = p.c();
    const std::size_t aw_offset = static_cast<std::size_t>(a0_count) * a0_deg;
    const std::size_t unknowns = aw_offset + static_cast<std::size_t>(s) * aw_count * aw_deg;
    const std::size_t constraints = static_cast<std::size_t>(n) * folds;

    // alpha_i^{q^u} and y_{i,j}^{q^t}
    std::vector<std::vector<Elem>> alpha_frob(n, std::vector<Elem>(a0_count));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned u = 0; u < a0_count; ++u) alpha_frob[i][u] = T.frobenius(T.alpha(i), u);
    std::vector<std::vector<std::vector<Elem>>> y_frob(n, std::vector<std::vector<Elem>>(folds));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < folds; ++j) {
            y_frob[i][j].resize(aw_count);
            for (unsigned t = 0; t < aw_count; ++t) y_frob[i][j][t] = T.frobenius(y.at(i, j), t);
        }

    Matrix sys(constraints, unknowns);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < folds; ++j) {
            const std::size_t row = static_cast<std::size_t>(i) * folds + j;
            for (unsigned u = 0; u < a0_count; ++u)
                for (unsigned d = 0; d < a0_deg; ++d)
                    sys(row, static_cast<std::size_t>(u) * a0_deg + d) =
                        F.mul(T.gamma_pow(static_cast<long long>(j) * d), alpha_frob[i][u]);
            for (unsigned w = 1; w <= s; ++w) {
                const unsigned jj = (j + w - 1) % folds;
                for (unsigned t = 0; t < aw_count; ++t)
                    for (unsigned d = 0; d < aw_deg; ++d) {
                        const std::size_t col =
                            aw_offset + (static_cast<std::size_t>(w - 1) * aw_count + t) * aw_deg + d;
                        sys(row, col) = F.mul(T.gamma_pow(static_cast<long long>(j) * d), y_frob[i][jj][t]);
                    }
            }
        }

    const auto null = linalg::kernel(F, sys);
    if (null.empty()) throw Error(ErrorCode::RadiusTooLarge, "interpolation system has only the zero solution");
    const auto& x = null.front();

    InterpolationPoly Q;
    Q.e = e;
    Q.unknowns = unknowns;
    Q.constraints = constraints;
    Q.a0.resize(a0_count);
    for (unsigned u = 0; u < a0_count; ++u)
        Q.a0[u].coeffs.assign(x.begin() + static_cast<long>(u) * a0_deg,
                              x.begin() + static_cast<long>(u + 1) * a0_deg);
    Q.aw.assign(s, std::vector<UniPoly>(aw_count));
    for (unsigned w = 0; w < s; ++w)
        for (unsigned t = 0; t < aw_count; ++t) {
            const std::size_t start = aw_offset + (static_cast<std::size_t>(w) * aw_count + t) * aw_deg;
            Q.aw[w][t].coeffs.assign(x.begin() + static_cast<long>(start),
                                     x.begin() + static_cast<long>(start + aw_deg));
        }
    return Q;
}

Elem evaluate(const Tower& T, const InterpolationPoly& Q, Elem x0, Elem y, std::span<const Elem> z) {
    if (z.size() != Q.aw.size()) throw Error(ErrorCode::LengthMismatch, "need one z value per fold");
    const GaloisField& F = T.fqn();
    LinearizedPoly a0;
    for (const auto& a : Q.a0) a0.coeffs.push_back(poly::eval(F, a, x0));
    Elem acc = a0.eval(T, y);
    for (std::size_t w = 0; w < Q.aw.size(); ++w) {
        LinearizedPoly aw;
        for (const auto& a : Q.aw[w]) aw.coeffs.push_back(poly::eval(F, a, x0));
        acc = F.add(acc, aw.eval(T, z[w]));
    }
    return acc;
}

UniPoly identity_residual(const CodeParams& p, const InterpolationPoly& Q, const MessagePoly& f, unsigned u) {
    const Tower& T = *p.tower;
    const GaloisField& F = T.fqn();
    UniPoly acc = u < Q.a0.size() ? Q.a0[u] : UniPoly();
    for (unsigned w = 1; w <= Q.aw.size(); ++w) {
        const Elem shift = T.gamma_pow(static_cast<long long>(w) - 1);
        for (unsigned i = 0; i <= Q.max_shift() && i <= u; ++i) {
            const unsigned v = u - i;
            if (v >= f.m()) continue;
            const UniPoly twisted = substitute_scaled(F, coeff_twist(T, f.blocks[v], i), shift);
            acc = poly::add(F, acc, poly::mul(F, Q.aw[w - 1][i], twisted));
        }
    }
    acc.trim();
    return acc;
}

std::vector<Elem> to_coordinates(const CodeParams& p, const MessagePoly& f) {
    const Tower& T = *p.tower;
    const unsigned D = T.fr_dim();
    std::vector<Elem> out(p.message_dim(), 0);
    for (unsigned v = 0; v < p.m; ++v)
        for (unsigned c = 0; c < p.k; ++c)
            T.vectorize_into(f.blocks[v].coeff(c),
                             std::span<Elem>(out).subspan(static_cast<std::size_t>(v) * p.block_dim() + c * D, D));
    return out;
}

MessagePoly from_coordinates(const CodeParams& p, std::span<const Elem> coords) {
    if (coords.size() != p.message_dim()) throw Error(ErrorCode::LengthMismatch, "message coordinate count");
    const Tower& T = *p.tower;
    const unsigned D = T.fr_dim();
    MessagePoly f(p.k, p.m);
    for (unsigned v = 0; v < p.m; ++v)
        for (unsigned c = 0; c < p.k; ++c)
            f.blocks[v].coeffs[c] = T.devectorize(coords.subspan(static_cast<std::size_t>(v) * p.block_dim() + c * D, D));
    return f;
}

IdentitySystem coefficient_identities(const InterpolationPoly& Q, const CodeParams& p) {
    const Tower& T = *p.tower;
    const GaloisField& F = T.fqn();
    const unsigned D = T.fr_dim();
    const unsigned folds = p.folds();

    IdentitySystem sys;
    sys.identities = static_cast<unsigned>(Q.a0.size());
    sys.rows_per_identity = folds * D;
    sys.block_dim = p.block_dim();
    sys.blocks = p.m;
    sys.max_shift = Q.max_shift();

    auto vectorize_poly = [&](const UniPoly& g, std::span<Elem> out) {
        for (unsigned d = 0; d < folds; ++d) T.vectorize_into(g.coeff(d), out.subspan(static_cast<std::size_t>(d) * D, D));
        if (g.degree() >= static_cast<int>(folds))
            throw Error(ErrorCode::DegreeViolation, "identity polynomial exceeds degree r-2");
    };

    sys.constants.resize(sys.identities);
    for (unsigned u = 0; u < sys.identities; ++u) {
        sys.constants[u].assign(sys.rows_per_identity, 0);
        vectorize_poly(Q.a0[u], sys.constants[u]);
    }

    // Column (c, b) of shift map i is the image of the block f = r^b x^c
    // (r^b encodes the b-th F_r basis vector of F_{q^n}).
    sys.shift_maps.reserve(sys.max_shift + 1);
    for (unsigned i = 0; i <= sys.max_shift; ++i) {
        Matrix S(sys.rows_per_identity, sys.block_dim);
        std::vector<Elem> col(sys.rows_per_identity);
        for (unsigned c = 0; c < p.k; ++c) {
            Elem basis = 1;
            for (unsigned b = 0; b < D; ++b, basis *= p.r()) {
                const Elem twisted = T.frobenius(basis, i);
                UniPoly acc;
                for (unsigned w = 1; w <= Q.aw.size(); ++w) {
                    std::vector<Elem> mono(c + 1, 0);
                    mono[c] = F.mul(twisted, T.gamma_pow(static_cast<long long>(w - 1) * c));
                    acc = poly::add(F, acc, poly::mul(F, Q.aw[w - 1][i], UniPoly(mono)));
                }
                vectorize_poly(acc, col);
                for (unsigned row = 0; row < sys.rows_per_identity; ++row) S(row, c * D + b) = col[row];
            }
        }
        sys.shift_maps.push_back(std::move(S));
    }
    return sys;
}

Matrix IdentitySystem::global_matrix(const GaloisField&) const {
    Matrix g(static_cast<std::size_t>(identities) * rows_per_identity, static_cast<std::size_t>(blocks) * block_dim);
    for (unsigned u = 0; u < identities; ++u)
        for (unsigned v = 0; v < blocks; ++v) {
            if (v > u || u - v > max_shift) continue;
            const Matrix& S = shift_maps[u - v];
            for (unsigned i = 0; i < rows_per_identity; ++i)
                for (unsigned j = 0; j < block_dim; ++j)
                    g(static_cast<std::size_t>(u) * rows_per_identity + i, static_cast<std::size_t>(v) * block_dim + j) =
                        S(i, j);
        }
    return g;
}

std::vector<Elem> IdentitySystem::global_rhs(const GaloisField& Fr) const {
    std::vector<Elem> b;
    b.reserve(static_cast<std::size_t>(identities) * rows_per_identity);
    for (const auto& c : constants)
        for (auto x : c) b.push_back(Fr.neg(x));
    return b;
}

std::vector<Elem> IdentitySystem::residual(const GaloisField& Fr, std::span<const Elem> coords, unsigned u) const {
    std::vector<Elem> acc = constants[u];
    for (unsigned v = 0; v < blocks; ++v) {
        if (v > u || u - v > max_shift) continue;
        const auto part = linalg::apply(Fr, shift_maps[u - v], coords.subspan(static_cast<std::size_t>(v) * block_dim, block_dim));
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = Fr.add(acc[i], part[i]);
    }
    return acc;
}

std::optional<linalg::AffineSpace> global_solve(const IdentitySystem& sys, const GaloisField& Fr) {
    return linalg::solve(Fr, sys.global_matrix(Fr), sys.global_rhs(Fr));
}

std::optional<linalg::AffineSpace> global_solve(const InterpolationPoly& Q, const CodeParams& p) {
    return global_solve(coefficient_identities(Q, p), p.tower->fr());
}

CandidateSpace::CandidateSpace(const CodeParams& p, IdentitySystem sys)
    : params_(p), sys_(std::move(sys)), solver_(p.tower->fr(), sys_.step_operator()) {
    degenerate_ = solver_.is_zero_map();
}

std::optional<linalg::AffineSpace> CandidateSpace::block_coset(unsigned a, std::span<const Elem> prefix) const {
    if (degenerate_) return conditioned_projection(a, prefix);
    const GaloisField& Fr = fr();
    const unsigned bd = sys_.block_dim;
    if (prefix.size() != static_cast<std::size_t>(a) * bd) throw Error(ErrorCode::LengthMismatch, "prefix length");
    std::vector<Elem> rhs = sys_.constants[a];
    for (unsigned v = 0; v < a; ++v) {
        if (a - v > sys_.max_shift) continue;
        const auto part = linalg::apply(Fr, sys_.shift_maps[a - v], prefix.subspan(static_cast<std::size_t>(v) * bd, bd));
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = Fr.add(rhs[i], part[i]);
    }
    for (auto& x : rhs) x = Fr.neg(x);
    auto point = solver_.particular(rhs);
    if (!point) return std::nullopt;
    return linalg::AffineSpace{std::move(*point), solver_.kernel_basis()};
}

std::optional<linalg::AffineSpace> CandidateSpace::conditioned_projection(unsigned a,
                                                                          std::span<const Elem> prefix) const {
    const GaloisField& Fr = fr();
    const unsigned bd = sys_.block_dim;
    if (prefix.size() != static_cast<std::size_t>(a) * bd) throw Error(ErrorCode::LengthMismatch, "prefix length");
    const Matrix g = sys_.global_matrix(Fr);
    const std::size_t known = prefix.size();
    const std::size_t free_cols = g.cols() - known;
    Matrix rest(g.rows(), free_cols);
    std::vector<Elem> rhs = sys_.global_rhs(Fr);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < known; ++j)
            if (g(i, j) != 0 && prefix[j] != 0) acc = Fr.add(acc, Fr.mul(g(i, j), prefix[j]));
        rhs[i] = Fr.sub(rhs[i], acc);
        for (std::size_t j = 0; j < free_cols; ++j) rest(i, j) = g(i, known + j);
    }
    auto sol = linalg::solve(Fr, rest, rhs);
    if (!sol) return std::nullopt;
    linalg::AffineSpace out;
    out.point.assign(sol->point.begin(), sol->point.begin() + bd);
    std::vector<std::vector<Elem>> dirs;
    for (const auto& d : sol->directions) dirs.emplace_back(d.begin(), d.begin() + bd);
    out.directions = linalg::span_basis(Fr, dirs, bd);
    return out;
}

bool CandidateSpace::satisfies_all(std::span<const Elem> coords) const {
    for (unsigned u = 0; u < sys_.identities; ++u)
        for (auto x : sys_.residual(fr(), coords, u))
            if (x != 0) return false;
    return true;
}

CandidateSpace build_candidate_space(const InterpolationPoly& Q, const CodeParams& p) {
    if (Q.is_zero()) throw Error(ErrorCode::InvalidParameters, "interpolation polynomial is zero");
    return CandidateSpace(p, coefficient_identities(Q, p));
}

std::size_t default_max_list(const CandidateSpace& space, const CandidateFilter* filter) {
    constexpr std::size_t kCap = 1000000;
    if (filter) return filter->default_max_list();
    if (space.degenerate()) return kCap;
    const double log_size = static_cast<double>(space.kernel_dim()) * space.params().m *
                            std::log(static_cast<double>(space.params().r()));
    if (log_size >= std::log(static_cast<double>(kCap))) return kCap;
    return static_cast<std::size_t>(std::llround(std::exp(log_size)));
}

namespace {

bool contained_in_coset(const GaloisField& Fr, const linalg::AffineSpace& inner, const linalg::AffineSpace& outer) {
    std::vector<Elem> diff(inner.point.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = Fr.sub(inner.point[i], outer.point[i]);
    if (!linalg::in_span(Fr, outer.directions, diff)) return false;
    for (const auto& d : inner.directions)
        if (!linalg::in_span(Fr, outer.directions, d)) return false;
    return true;
}

}  // namespace

Enumeration enumerate_list(const CandidateSpace& space, const CandidateFilter* filter, const EnumerateOptions& opts) {
    const GaloisField& Fr = space.fr();
    const unsigned m = space.params().m;
    const unsigned bd = space.system().block_dim;
    const std::size_t cap = opts.max_list ? opts.max_list : default_max_list(space, filter);

    Enumeration out;
    std::vector<Elem> prefix;
    prefix.reserve(static_cast<std::size_t>(m) * bd);

    std::function<void(unsigned, const std::any&)> dfs = [&](unsigned a, const std::any& state) {
        if (out.overflow) return;
        ++out.branches;
        auto coset = space.block_coset(a, prefix);
        if (opts.verify_periodicity) {
            ++out.periodicity_checks;
            const auto joint = space.conditioned_projection(a, prefix);
            bool ok = true;
            if (joint && !coset) ok = false;
            if (joint && coset) {
                // every consistent step is a coset of the one common W
                if (!space.degenerate() && coset->directions != space.kernel()) ok = false;
                if (!contained_in_coset(Fr, *joint, *coset)) ok = false;
            }
            if (!ok) ++out.periodicity_violations;
        }
        if (!coset) {
            ++out.pruned;
            return;
        }

        auto visit = [&](std::span<const Elem> block, const std::any& child) {
            prefix.insert(prefix.end(), block.begin(), block.end());
            if (a + 1 == m) {
                if (space.satisfies_all(prefix)) {
                    if (out.candidates.size() >= cap) {
                        out.overflow = true;
                    } else {
                        out.candidates.push_back(prefix);
                        if (filter) out.preimages.push_back(filter->preimage(child, prefix));
                    }
                } else {
                    ++out.pruned;
                }
            } else {
                dfs(a + 1, child);
            }
            prefix.resize(static_cast<std::size_t>(a) * bd);
        };

        if (filter) {
            auto branches = filter->expand(state, a, *coset);
            if (branches.empty()) ++out.pruned;
            for (const auto& b : branches) {
                if (out.overflow) break;
                visit(b.block, b.state);
            }
            return;
        }

        const std::size_t d = coset->dim();
        const std::uint64_t r = Fr.order();
        std::vector<Elem> digits(d, 0);
        std::vector<Elem> point(bd);
        const std::any none;
        for (;;) {
            point = coset->point;
            for (std::size_t j = 0; j < d; ++j) {
                if (digits[j] == 0) continue;
                for (std::size_t i = 0; i < bd; ++i)
                    if (coset->directions[j][i] != 0)
                        point[i] = Fr.add(point[i], Fr.mul(digits[j], coset->directions[j][i]));
            }
            visit(point, none);
            if (out.overflow) return;
            std::size_t j = 0;
            while (j < d && ++digits[j] == r) digits[j++] = 0;
            if (j == d) break;
        }
    };

    dfs(0, filter ? filter->root() : std::any{});
    return out;
}

DecodeResult decode(const ReceivedWord& y, unsigned e, const CodeParams& p, const CandidateFilter* filter,
                    const EnumerateOptions& opts) {
    const DerivedParameters dp = derive_parameters(p);
    if (static_cast<long>(e) > dp.e_max)
        throw Error(ErrorCode::RadiusTooLarge,
                    "e = " + std::to_string(e) + " exceeds e_max = " + std::to_string(dp.e_max));
    const Tower& T = *p.tower;

    const InterpolationPoly Q = interpolate(y, e, p);
    const CandidateSpace space = build_candidate_space(Q, p);
    Enumeration en = enumerate_list(space, filter, opts);

    DecodeResult res;
    res.stats.kernel_dim = space.kernel_dim();
    res.stats.candidates = en.candidates.size();
    res.stats.branches = en.branches;
    res.stats.pruned = en.pruned;
    res.stats.interp_unknowns = Q.unknowns;
    res.stats.interp_constraints = Q.constraints;
    res.stats.degenerate = space.degenerate();
    res.stats.overflow = en.overflow;
    res.stats.kernel_within_fold_bound = space.kernel_dim() <= static_cast<std::size_t>(p.ell()) * p.n() * (p.s - 1);
    res.stats.kernel_within_s_minus_1 = space.kernel_dim() <= p.s - 1;
    res.stats.periodicity_checks = en.periodicity_checks;
    res.stats.periodicity_violations = en.periodicity_violations;

    std::vector<std::pair<MessagePoly, std::vector<Elem>>> kept;
    for (std::size_t i = 0; i < en.candidates.size(); ++i) {
        MessagePoly f = from_coordinates(p, en.candidates[i]);
        if (rank_distance(T, encode(p, f), y) <= e)
            kept.emplace_back(std::move(f), filter ? en.preimages[i] : std::vector<Elem>{});
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [f, pre] : kept) {
        res.list.push_back(std::move(f));
        if (filter) res.preimages.push_back(std::move(pre));
    }
    res.stats.list_size = res.list.size();
    return res;
}

}  // namespace rankdec
