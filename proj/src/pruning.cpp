#include "rankdec/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rankdec/error.hpp"
#include "rankdec/rng.hpp"

namespace rankdec {

namespace {

constexpr double kEps = 1e-9;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, unsigned e) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < e; ++i) out = sat_mul(out, base);
    return out;
}

unsigned ceil_tol(double x) { return static_cast<unsigned>(std::ceil(x - kEps)); }

/// `dim` independent random vectors of F^ambient (rejection on rank).
Basis random_subspace(const GaloisField& F, std::size_t dim, std::size_t ambient, Rng& rng) {
    for (;;) {
        Basis rows(dim, std::vector<Elem>(ambient));
        for (auto& row : rows)
            for (auto& x : row) x = F.random(rng);
        if (dim == 0 || linalg::rank(F, Matrix::from_rows(rows, ambient)) == dim) return rows;
    }
}

Elem frobenius_r(const GaloisField& F, std::uint64_t r, Elem x, unsigned times) {
    for (unsigned i = 0; i < times; ++i) x = F.pow(x, r);
    return x;
}

std::vector<Elem> combine(const GaloisField& F, const Basis& cols, std::span<const Elem> coeffs, std::size_t dim) {
    std::vector<Elem> out(dim, 0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (coeffs[j] == 0) continue;
        for (std::size_t i = 0; i < dim; ++i)
            if (cols[j][i] != 0) out[i] = F.add(out[i], F.mul(coeffs[j], cols[j][i]));
    }
    return out;
}

std::vector<Elem> vec_add(const GaloisField& F, std::span<const Elem> a, std::span<const Elem> b) {
    std::vector<Elem> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
    return out;
}

std::vector<Elem> vec_sub(const GaloisField& F, std::span<const Elem> a, std::span<const Elem> b) {
    std::vector<Elem> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- evasive set

std::vector<Elem> EvasiveSet::evaluate(std::span<const Elem> x) const {
    if (x.size() != h) throw Error(ErrorCode::LengthMismatch, "evasive point has wrong length");
    const GaloisField& F = *fq1;
    std::vector<Elem> frob(h);
    for (unsigned j = 0; j < h; ++j) frob[j] = frobenius_r(F, r, x[j], frob_powers[j]);
    std::vector<Elem> out(v, 0);
    for (unsigned i = 1; i <= v; ++i)
        for (unsigned j = 0; j < h; ++j) out[i - 1] = F.add(out[i - 1], F.mul(F.pow(points[j], i), frob[j]));
    return out;
}

bool EvasiveSet::contains(std::span<const Elem> x) const {
    const auto vals = evaluate(x);
    return std::all_of(vals.begin(), vals.end(), [](Elem e) { return e == 0; });
}

Basis EvasiveSet::basis() const {
    const std::size_t width = static_cast<std::size_t>(lambda) * h;
    Basis out;
    out.reserve(dim());
    for (unsigned b = 0; b < blocks; ++b)
        for (const auto& vec : block_basis) {
            std::vector<Elem> full(Lambda, 0);
            std::copy(vec.begin(), vec.end(), full.begin() + static_cast<std::ptrdiff_t>(b * width));
            out.push_back(std::move(full));
        }
    return out;
}

std::vector<Elem> EvasiveSet::to_fr(std::span<const Elem> x) const {
    std::vector<Elem> out(static_cast<std::size_t>(lambda) * x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto c = lambda == 1 ? std::vector<Elem>{x[j]} : fq1->coefficients(x[j]);
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>(j * lambda));
    }
    return out;
}

std::vector<Elem> EvasiveSet::from_fr(std::span<const Elem> coords) const {
    if (coords.size() % lambda != 0) throw Error(ErrorCode::LengthMismatch, "F_r coordinates not a multiple of lambda");
    std::vector<Elem> out(coords.size() / lambda);
    for (std::size_t j = 0; j < out.size(); ++j) {
        auto c = coords.subspan(j * lambda, lambda);
        out[j] = lambda == 1 ? c[0] : fq1->from_coefficients(c);
    }
    return out;
}

std::optional<unsigned> choose_lambda(std::uint64_t r, unsigned Lambda, unsigned h) {
    for (unsigned lambda = 1; lambda <= Lambda; ++lambda) {
        if (Lambda % lambda != 0) continue;
        const std::uint64_t q1 = sat_pow(r, lambda);
        if (q1 <= Lambda || q1 <= h) continue;
        if ((Lambda / lambda) % h != 0) continue;
        return lambda;
    }
    return std::nullopt;
}

EvasiveSet build_evasive_block(FieldPtr fr, unsigned lambda, unsigned h, unsigned v) {
    if (lambda == 0 || h == 0 || v == 0 || v > h)
        throw Error(ErrorCode::InvalidParameters, "evasive block needs 1 <= v <= h and lambda >= 1");
    EvasiveSet ev;
    ev.r = fr->order();
    ev.v = v;
    ev.h = h;
    ev.lambda = lambda;
    ev.epsilon = static_cast<double>(v) / h;
    ev.Lambda = lambda * h;
    ev.blocks = 1;
    ev.fr = fr;
    ev.fq1 = GaloisField::canonical_extension(fr, lambda);
    if (ev.fq1->order() <= h) throw Error(ErrorCode::ParameterInfeasible, "F_{q1} has fewer than h nonzero points");
    for (unsigned j = 0; j < h; ++j) {
        ev.points.push_back(j + 1);
        ev.frob_powers.push_back(h - 1 - j);
    }

    // Column (j, b) of the F_r-linear map is (f_1, ..., f_v) at the point with
    // x_j = b-th basis element of F_{q1} and every other coordinate zero.
    const GaloisField& F = *ev.fq1;
    const std::size_t cols = static_cast<std::size_t>(lambda) * h;
    Matrix map(static_cast<std::size_t>(lambda) * v, cols);
    std::vector<Elem> x(h, 0);
    std::vector<Elem> unit(lambda, 0);
    for (unsigned j = 0; j < h; ++j)
        for (unsigned b = 0; b < lambda; ++b) {
            std::fill(unit.begin(), unit.end(), 0);
            unit[b] = 1;
            x[j] = lambda == 1 ? 1 : F.from_coefficients(unit);
            const auto vals = ev.evaluate(x);
            const auto coords = ev.to_fr(vals);
            for (std::size_t i = 0; i < coords.size(); ++i) map(i, static_cast<std::size_t>(j) * lambda + b) = coords[i];
            x[j] = 0;
        }
    ev.block_basis = linalg::kernel(*fr, map);
    return ev;
}

EvasiveSet build_evasive(FieldPtr fr, unsigned v, double epsilon, unsigned Lambda) {
    if (v == 0 || !(epsilon > 0) || epsilon > 1 || Lambda == 0)
        throw Error(ErrorCode::InvalidParameters, "evasive set needs v >= 1, 0 < epsilon <= 1, Lambda >= 1");
    const unsigned h = ceil_tol(v / epsilon);
    const std::uint64_t r = fr->order();
    const auto lambda = choose_lambda(r, Lambda, h);
    if (!lambda) {
        unsigned feasible = Lambda + 1;
        while (!choose_lambda(r, feasible, h)) ++feasible;
        throw Error(ErrorCode::ParameterInfeasible,
                    "no extension degree lambda fits Lambda = " + std::to_string(Lambda) + " with h = " +
                        std::to_string(h) + "; smallest feasible Lambda is " + std::to_string(feasible));
    }
    EvasiveSet ev = build_evasive_block(fr, *lambda, h, v);
    ev.epsilon = epsilon;
    ev.Lambda = Lambda;
    ev.blocks = Lambda / (*lambda * h);
    return ev;
}

// ---------------------------------------------------------------- designs

std::vector<Basis> SeededRandomDesignSource::subspaces(const GaloisField& F, unsigned dim, unsigned codim,
                                                       unsigned count) const {
    Rng rng(seed_);
    std::vector<Basis> out;
    for (unsigned i = 0; i < count; ++i) {
        Rng sub = rng.split(i);
        out.push_back(random_subspace(F, dim - std::min(codim, dim), dim, sub));
    }
    return out;
}

SubspaceDesign build_design(FieldPtr fr, unsigned v, double epsilon, unsigned Lambda, unsigned M, DesignMode mode,
                            std::uint64_t seed, const DesignOptions& opts) {
    if (v == 0 || M == 0 || Lambda == 0 || !(epsilon > 0) || epsilon > 1)
        throw Error(ErrorCode::InvalidParameters, "design needs v, M, Lambda >= 1 and 0 < epsilon <= 1");
    SubspaceDesign d;
    d.Lambda = Lambda;
    d.v = v;
    d.seed = seed;
    const GaloisField& Fr = *fr;

    if (mode == DesignMode::Random) {
        d.mode = "random";
        const unsigned codim = opts.codim ? *opts.codim : ceil_tol(epsilon * Lambda);
        if (codim > Lambda) throw Error(ErrorCode::InvalidParameters, "codimension exceeds Lambda");
        const double eps_eff = opts.codim ? static_cast<double>(codim) / Lambda : epsilon;
        if (codim == 0) throw Error(ErrorCode::InvalidParameters, "codimension must be positive");
        Rng rng(seed);
        for (unsigned i = 0; i < M; ++i) {
            Rng sub = rng.split(i);
            d.members.push_back(random_subspace(Fr, Lambda - codim, Lambda, sub));
        }
        d.declared_bound = static_cast<std::size_t>(std::floor(2.0 * v / eps_eff + kEps));
        d.max_codim = codim;
        return d;
    }

    d.mode = "combined";
    const EvasiveSet ev = build_evasive(fr, v, epsilon, Lambda);
    const unsigned lambda = ev.lambda;
    const unsigned Lp = Lambda / lambda;
    if (v > epsilon * Lp / 4.0 + kEps) {
        auto feasible = [&](unsigned L) {
            const auto lam = choose_lambda(Fr.order(), L, ev.h);
            return lam && v <= epsilon * (L / *lam) / 4.0 + kEps;
        };
        unsigned need = Lambda + 1;
        while (!feasible(need)) ++need;
        throw Error(ErrorCode::ParameterInfeasible,
                    "combined design needs v <= epsilon * Lambda' / 4 (Lambda' = " + std::to_string(Lp) +
                        "); smallest feasible Lambda is " + std::to_string(need));
    }
    const unsigned codim_q1 = ceil_tol(epsilon * Lp);
    SeededRandomDesignSource fallback(seed);
    const DesignSource& source = opts.source ? *opts.source : fallback;
    const auto vs = source.subspaces(*ev.fq1, Lp, codim_q1, M);
    const Basis S = ev.basis();

    // F_{q1}-span over F_r: each basis vector times each F_r-basis element.
    const GaloisField& Fq1 = *ev.fq1;
    std::vector<Elem> unit(lambda, 0);
    for (const auto& V : vs) {
        Basis Vr;
        for (const auto& u : V)
            for (unsigned b = 0; b < lambda; ++b) {
                std::fill(unit.begin(), unit.end(), 0);
                unit[b] = 1;
                const Elem scalar = lambda == 1 ? 1 : Fq1.from_coefficients(unit);
                std::vector<Elem> w(u.size());
                for (std::size_t j = 0; j < u.size(); ++j) w[j] = Fq1.mul(scalar, u[j]);
                Vr.push_back(ev.to_fr(w));
            }
        d.members.push_back(linalg::intersect(Fr, Vr, S, Lambda));
    }
    d.declared_bound = static_cast<std::size_t>(std::floor(2.0 * v * (ev.h - 1) / epsilon + kEps));
    for (std::size_t i = 0; i < d.members.size(); ++i) d.max_codim = std::max(d.max_codim, d.codim(i));
    return d;
}

std::uint64_t gaussian_binomial(std::uint64_t r, unsigned Lambda, unsigned v) {
    if (v > Lambda) return 0;
    // row[k] = [n choose k]_r, built up over n
    std::vector<std::uint64_t> row(v + 1, 0);
    row[0] = 1;
    for (unsigned n = 1; n <= Lambda; ++n)
        for (unsigned k = std::min(n, v); k >= 1; --k) row[k] = sat_add(row[k - 1], sat_mul(sat_pow(r, k), row[k]));
    return row[v];
}

namespace {

std::size_t sum_intersections(const GaloisField& Fr, const std::vector<Matrix>& annihilators, const Matrix& W,
                              unsigned v) {
    const Matrix Wt = W.transpose();
    std::size_t total = 0;
    for (const auto& P : annihilators) total += v - linalg::rank(Fr, linalg::multiply(Fr, P, Wt));
    return total;
}

/// Visits every v x Lambda matrix in reduced row echelon form of rank v.
template <class Visit>
void for_each_rref(const GaloisField& Fr, unsigned Lambda, unsigned v, Visit&& visit) {
    std::vector<unsigned> piv(v);
    for (unsigned i = 0; i < v; ++i) piv[i] = i;
    const std::uint64_t r = Fr.order();
    for (;;) {
        std::vector<std::pair<unsigned, unsigned>> free;
        for (unsigned i = 0; i < v; ++i)
            for (unsigned j = piv[i] + 1; j < Lambda; ++j)
                if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.emplace_back(i, j);
        Matrix W(v, Lambda);
        for (unsigned i = 0; i < v; ++i) W(i, piv[i]) = 1;
        std::vector<Elem> digits(free.size(), 0);
        for (;;) {
            for (std::size_t t = 0; t < free.size(); ++t) W(free[t].first, free[t].second) = digits[t];
            visit(W);
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == r) digits[t++] = 0;
            if (t == digits.size()) break;
        }
        // next pivot combination
        int i = static_cast<int>(v) - 1;
        while (i >= 0 && piv[i] == Lambda - v + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < v; ++j) piv[j] = piv[j - 1] + 1;
    }
}

}  // namespace

DesignCertificate verify_design(const GaloisField& fr, const SubspaceDesign& design, unsigned v, std::size_t trials,
                                std::uint64_t exhaustive_threshold, std::uint64_t seed, bool force_enumeration) {
    if (v == 0 || v > design.Lambda) throw Error(ErrorCode::InvalidParameters, "verifier needs 1 <= v <= Lambda");
    DesignCertificate cert;
    cert.declared_bound = design.declared_bound;
    const unsigned L = design.Lambda;

    if (v == 1 && !force_enumeration) {
        // A line lies in H_i for every i of a set S iff it lies in their
        // intersection, so the maximum is the largest S with nonzero meet.
        cert.method = "intersection-lattice";
        cert.exhaustive = true;
        const std::size_t M = design.members.size();
        std::function<void(std::size_t, const Basis&, std::size_t)> dfs = [&](std::size_t next, const Basis& meet,
                                                                             std::size_t depth) {
            ++cert.subspaces_checked;
            cert.max_sum = std::max(cert.max_sum, depth);
            if (depth + (M - next) <= cert.max_sum) return;
            for (std::size_t i = next; i < M; ++i) {
                Basis sub = depth == 0 ? linalg::span_basis(fr, design.members[i], L)
                                       : linalg::intersect(fr, meet, design.members[i], L);
                if (!sub.empty()) dfs(i + 1, sub, depth + 1);
            }
        };
        dfs(0, {}, 0);
        cert.passed = cert.max_sum <= cert.declared_bound;
        return cert;
    }

    std::vector<Matrix> ann;
    for (const auto& H : design.members) ann.push_back(linalg::annihilator(fr, H, L));

    const std::uint64_t count = gaussian_binomial(fr.order(), L, v);
    if (force_enumeration || count <= exhaustive_threshold) {
        cert.method = "enumeration";
        cert.exhaustive = true;
        for_each_rref(fr, L, v, [&](const Matrix& W) {
            ++cert.subspaces_checked;
            cert.max_sum = std::max(cert.max_sum, sum_intersections(fr, ann, W, v));
        });
    } else {
        cert.method = "random";
        Rng rng(seed);
        for (std::size_t t = 0; t < trials; ++t) {
            const Basis W = random_subspace(fr, v, L, rng);
            ++cert.subspaces_checked;
            cert.max_sum = std::max(cert.max_sum, sum_intersections(fr, ann, Matrix::from_rows(W, L), v));
        }
    }
    cert.passed = cert.max_sum <= cert.declared_bound;
    return cert;
}

// ---------------------------------------------------------------- pre-codes

std::size_t hse_list_cap(double zeta, unsigned alpha) {
    return static_cast<std::size_t>(std::ceil(hse_list_bound(zeta, alpha) - kEps));
}

double hse_list_bound(double zeta, unsigned alpha) { return 4.0 * (alpha + 1) / zeta; }

std::size_t PrecodedCode::domain_dim() const {
    if (mode == PrecodeMode::Hse) return generator.cols();
    std::size_t d = 0;
    for (const auto& b : block_bases) d += b.size();
    return d;
}

double PrecodedCode::rate() const {
    const double logq = static_cast<double>(domain_dim()) / params.ell();
    return logq / (static_cast<double>(params.n()) * params.t());
}

std::vector<Elem> PrecodedCode::expand(std::span<const Elem> x) const {
    if (x.size() != domain_dim()) throw Error(ErrorCode::LengthMismatch, "pre-message has wrong length");
    const GaloisField& Fr = params.tower->fr();
    if (mode == PrecodeMode::Hse) return linalg::apply(Fr, generator, x);
    const std::size_t bd = params.block_dim();
    std::vector<Elem> out;
    out.reserve(params.message_dim());
    std::size_t off = 0;
    for (const auto& B : block_bases) {
        const auto blk = combine(Fr, B, x.subspan(off, B.size()), bd);
        out.insert(out.end(), blk.begin(), blk.end());
        off += B.size();
    }
    return out;
}

MessagePoly PrecodedCode::message(std::span<const Elem> x) const { return from_coordinates(params, expand(x)); }

std::vector<Elem> PrecodedCode::random_premessage(Rng& rng) const {
    const GaloisField& Fr = params.tower->fr();
    std::vector<Elem> x(domain_dim());
    for (auto& e : x) e = Fr.random(rng);
    return x;
}

namespace {

std::vector<std::string> hse_guards(const CodeParams& p, double zeta, unsigned alpha) {
    std::vector<std::string> out;
    const double need_blocks = (alpha + 1) / zeta;
    if (p.m + kEps < need_blocks) {
        std::ostringstream os;
        os << "m = " << p.m << " is below (alpha+1)/zeta = " << need_blocks;
        out.push_back(os.str());
    }
    const double need_dim = 2.0 * p.s * (alpha + 2) / zeta;
    if (p.block_dim() <= need_dim + kEps) {
        std::ostringstream os;
        os << "block dimension " << p.block_dim() << " does not exceed 2s(alpha+2)/zeta = " << need_dim;
        out.push_back(os.str());
    }
    return out;
}

class DesignFilter : public CandidateFilter {
public:
    explicit DesignFilter(const PrecodedCode& pc) : Fr_(&pc.params.tower->fr()), pc_(&pc) {
        const std::size_t bd = pc.params.block_dim();
        for (const auto& B : pc.block_bases) {
            ann_.push_back(linalg::annihilator(*Fr_, B, bd));
            cols_.push_back(Matrix::from_columns(B, bd));
        }
    }

    std::any root() const override { return {}; }

    std::vector<Branch> expand(const std::any&, unsigned block, const linalg::AffineSpace& coset) const override {
        const GaloisField& F = *Fr_;
        const Matrix& P = ann_[block];
        const Matrix Wc = Matrix::from_columns(coset.directions, coset.ambient());
        const auto pv = linalg::apply(F, P, coset.point);
        std::vector<Elem> rhs(pv.size());
        for (std::size_t i = 0; i < pv.size(); ++i) rhs[i] = F.neg(pv[i]);
        const auto sol = linalg::solve(F, linalg::multiply(F, P, Wc), rhs);
        std::vector<Branch> out;
        if (!sol) return out;
        for (const auto& c : linalg::enumerate(F, *sol)) {
            auto val = combine(F, coset.directions, c, coset.ambient());
            out.push_back({vec_add(F, coset.point, val), {}});
        }
        return out;
    }

    std::vector<Elem> preimage(const std::any&, std::span<const Elem> coords) const override {
        const std::size_t bd = pc_->params.block_dim();
        std::vector<Elem> out;
        for (std::size_t a = 0; a < cols_.size(); ++a) {
            const auto z = linalg::solve(*Fr_, cols_[a], coords.subspan(a * bd, bd));
            if (!z) throw Error(ErrorCode::ShapeMismatch, "candidate block outside the design subspace");
            out.insert(out.end(), z->point.begin(), z->point.end());
        }
        return out;
    }

    std::size_t default_max_list() const override {
        return static_cast<std::size_t>(std::min<std::uint64_t>(
            1000000, sat_pow(pc_->params.r(), static_cast<unsigned>(pc_->design_bound))));
    }

private:
    const GaloisField* Fr_;
    const PrecodedCode* pc_;
    std::vector<Matrix> ann_;
    std::vector<Matrix> cols_;
};

/// Tracks the affine set of pre-messages consistent with the blocks chosen so
/// far and branches on the distinct values the next block can take.
class HseFilter : public CandidateFilter {
public:
    explicit HseFilter(const PrecodedCode& pc) : Fr_(&pc.params.tower->fr()), pc_(&pc) {
        const std::size_t bd = pc.params.block_dim();
        const std::size_t K = pc.generator.cols();
        for (unsigned a = 0; a < pc.params.m; ++a) {
            Matrix Ga(bd, K);
            for (std::size_t i = 0; i < bd; ++i)
                for (std::size_t j = 0; j < K; ++j) Ga(i, j) = pc.generator(a * bd + i, j);
            blocks_.push_back(std::move(Ga));
        }
    }

    std::any root() const override {
        const std::size_t K = pc_->generator.cols();
        linalg::AffineSpace X;
        X.point.assign(K, 0);
        for (std::size_t j = 0; j < K; ++j) {
            std::vector<Elem> e(K, 0);
            e[j] = 1;
            X.directions.push_back(std::move(e));
        }
        return X;
    }

    std::vector<Branch> expand(const std::any& state, unsigned block, const linalg::AffineSpace& coset) const override {
        const GaloisField& F = *Fr_;
        const auto& X = std::any_cast<const linalg::AffineSpace&>(state);
        const Matrix& Ga = blocks_[block];
        const std::size_t K = X.ambient();
        const std::size_t bd = coset.ambient();
        const Matrix B = Matrix::from_columns(X.directions, K);
        const Matrix GB = linalg::multiply(F, Ga, B);

        // Restrict X to G_a x in the coset.
        const Matrix P = linalg::annihilator(F, coset.directions, bd);
        const auto gx0 = linalg::apply(F, Ga, X.point);
        const auto sol = linalg::solve(F, linalg::multiply(F, P, GB), linalg::apply(F, P, vec_sub(F, coset.point, gx0)));
        std::vector<Branch> out;
        if (!sol) return out;
        linalg::AffineSpace Xc;
        Xc.point = vec_add(F, X.point, linalg::apply(F, B, sol->point));
        for (const auto& k : sol->directions) Xc.directions.push_back(linalg::apply(F, B, k));

        // Distinct values of G_a x over the restricted set.
        const Matrix Bc = Matrix::from_columns(Xc.directions, K);
        const Matrix GBc = linalg::multiply(F, Ga, Bc);
        linalg::AffineSpace values;
        values.point = linalg::apply(F, Ga, Xc.point);
        std::vector<std::vector<Elem>> imgs;
        for (std::size_t j = 0; j < GBc.cols(); ++j) imgs.push_back(GBc.column(j));
        values.directions = linalg::span_basis(F, imgs, bd);
        const linalg::LinearSolver solver(F, GBc);
        for (auto& y : linalg::enumerate(F, values)) {
            const auto d = solver.particular(vec_sub(F, y, values.point));
            linalg::AffineSpace child;
            child.point = vec_add(F, Xc.point, linalg::apply(F, Bc, *d));
            for (const auto& k : solver.kernel_basis()) child.directions.push_back(linalg::apply(F, Bc, k));
            out.push_back({std::move(y), std::move(child)});
        }
        return out;
    }

    std::vector<Elem> preimage(const std::any& leaf, std::span<const Elem>) const override {
        return std::any_cast<const linalg::AffineSpace&>(leaf).point;
    }

    std::size_t default_max_list() const override { return hse_list_cap(pc_->zeta, pc_->alpha); }

private:
    const GaloisField* Fr_;
    const PrecodedCode* pc_;
    std::vector<Matrix> blocks_;
};

}  // namespace

std::unique_ptr<CandidateFilter> PrecodedCode::filter() const {
    if (mode == PrecodeMode::Hse) return std::make_unique<HseFilter>(*this);
    return std::make_unique<DesignFilter>(*this);
}

PrecodedCode precode_design_build(const CodeParams& p, double epsilon, const SubspaceDesign& design) {
    const unsigned D = p.ell() * p.n();
    const unsigned Lambda = D * p.folds();
    if (design.Lambda != Lambda)
        throw Error(ErrorCode::ShapeMismatch, "design ambient dimension " + std::to_string(design.Lambda) +
                                                  " differs from ell n (r-1) = " + std::to_string(Lambda));
    if (design.members.size() < p.m)
        throw Error(ErrorCode::ShapeMismatch, "design has fewer members than blocks");
    const GaloisField& Fr = p.tower->fr();
    PrecodedCode pc;
    pc.mode = PrecodeMode::Design;
    pc.params = p;
    pc.epsilon = epsilon;
    pc.design_bound = design.declared_bound;
    pc.design_seed = design.seed;
    const std::size_t bd = p.block_dim();
    for (unsigned a = 0; a < p.m; ++a) {
        // H_a ∩ {deg < k}: the degree-bounded part is the first k ell n coordinates.
        const Matrix P = linalg::annihilator(Fr, design.members[a], Lambda);
        Matrix Pk(P.rows(), bd);
        for (std::size_t i = 0; i < P.rows(); ++i)
            for (std::size_t j = 0; j < bd; ++j) Pk(i, j) = P(i, j);
        auto basis = linalg::kernel(Fr, Pk);
        if (basis.empty())
            throw Error(ErrorCode::EmptyBlock, "design member " + std::to_string(a) + " meets deg < k only in zero");
        pc.block_bases.push_back(std::move(basis));
    }
    return pc;
}

PrecodedCode precode_hse_build(const CodeParams& p, double zeta, unsigned alpha, std::uint64_t seed) {
    if (!(zeta > 0) || zeta >= 0.5) throw Error(ErrorCode::InvalidParameters, "zeta must lie in (0, 1/2)");
    const std::size_t kappa = p.message_dim();
    const auto K = static_cast<std::size_t>(std::floor((1.0 - 2.0 * zeta) * kappa + kEps));
    if (K == 0) throw Error(ErrorCode::InvalidParameters, "pre-code domain would be empty");
    PrecodedCode pc;
    pc.mode = PrecodeMode::Hse;
    pc.params = p;
    pc.zeta = zeta;
    pc.alpha = alpha;
    pc.seed = seed;
    Rng rng(seed);
    const Basis cols = random_subspace(p.tower->fr(), K, kappa, rng);
    pc.generator = Matrix::from_columns(cols, kappa);
    pc.guard_warnings = hse_guards(p, zeta, alpha);
    return pc;
}

// ---------------------------------------------------------------- file format

void write_precode(std::ostream& os, const PrecodedCode& pc) {
    const CodeParams& p = pc.params;
    os << "rankdec-precode v1\n";
    os << "params " << p.r() << ' ' << p.ell() << ' ' << p.n() << ' ' << p.m << ' ' << p.k << ' ' << p.s << '\n';
    os << std::setprecision(17);
    if (pc.mode == PrecodeMode::Design) {
        os << "mode design\n";
        os << "design " << pc.epsilon << ' ' << pc.design_bound << ' ' << pc.design_seed << '\n';
        for (std::size_t a = 0; a < pc.block_bases.size(); ++a) {
            os << "block " << a << ' ' << pc.block_bases[a].size() << '\n';
            for (const auto& v : pc.block_bases[a]) {
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
                os << '\n';
            }
        }
    } else {
        os << "mode hse\n";
        os << "hse " << pc.zeta << ' ' << pc.alpha << ' ' << pc.seed << '\n';
        os << "matrix " << pc.generator.rows() << ' ' << pc.generator.cols() << '\n';
        for (std::size_t i = 0; i < pc.generator.rows(); ++i) {
            auto row = pc.generator.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
            os << '\n';
        }
    }
}

namespace {

void expect(std::istream& is, const std::string& word) {
    std::string got;
    if (!(is >> got) || got != word) throw Error(ErrorCode::ParseError, "expected '" + word + "', got '" + got + "'");
}

template <class T>
T read_value(std::istream& is, const char* what) {
    T v{};
    if (!(is >> v)) throw Error(ErrorCode::ParseError, std::string("could not read ") + what);
    return v;
}

}  // namespace

PrecodedCode read_precode(std::istream& is) {
    expect(is, "rankdec-precode");
    expect(is, "v1");
    expect(is, "params");
    const auto r = read_value<std::uint64_t>(is, "r");
    const auto ell = read_value<unsigned>(is, "ell");
    const auto n = read_value<unsigned>(is, "n");
    const auto m = read_value<unsigned>(is, "m");
    const auto k = read_value<unsigned>(is, "k");
    const auto s = read_value<unsigned>(is, "s");
    PrecodedCode pc;
    pc.params = CodeParams::make(r, ell, n, m, k, s);
    const GaloisField& Fr = pc.params.tower->fr();
    expect(is, "mode");
    const auto mode = read_value<std::string>(is, "mode");
    const std::size_t bd = pc.params.block_dim();
    auto read_elem = [&](const char* what) {
        const auto x = read_value<Elem>(is, what);
        if (!Fr.contains(x)) throw Error(ErrorCode::ParseError, std::string(what) + " outside F_r");
        return x;
    };
    if (mode == "design") {
        pc.mode = PrecodeMode::Design;
        expect(is, "design");
        pc.epsilon = read_value<double>(is, "epsilon");
        pc.design_bound = read_value<std::size_t>(is, "bound");
        pc.design_seed = read_value<std::uint64_t>(is, "seed");
        for (unsigned a = 0; a < m; ++a) {
            expect(is, "block");
            if (read_value<unsigned>(is, "block index") != a) throw Error(ErrorCode::ParseError, "block out of order");
            const auto dim = read_value<std::size_t>(is, "block dimension");
            Basis B(dim, std::vector<Elem>(bd));
            for (auto& v : B)
                for (auto& x : v) x = read_elem("basis entry");
            if (linalg::rank(Fr, Matrix::from_rows(B, bd)) != dim)
                throw Error(ErrorCode::ParseError, "block basis is not independent");
            pc.block_bases.push_back(std::move(B));
        }
    } else if (mode == "hse") {
        pc.mode = PrecodeMode::Hse;
        expect(is, "hse");
        pc.zeta = read_value<double>(is, "zeta");
        pc.alpha = read_value<unsigned>(is, "alpha");
        pc.seed = read_value<std::uint64_t>(is, "seed");
        expect(is, "matrix");
        const auto rows = read_value<std::size_t>(is, "rows");
        const auto cols = read_value<std::size_t>(is, "cols");
        if (rows != pc.params.message_dim()) throw Error(ErrorCode::ParseError, "generator row count mismatch");
        pc.generator = Matrix(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) pc.generator(i, j) = read_elem("generator entry");
        if (linalg::rank(Fr, pc.generator) != cols) throw Error(ErrorCode::ParseError, "generator lacks full column rank");
        pc.guard_warnings = hse_guards(pc.params, pc.zeta, pc.alpha);
    } else {
        throw Error(ErrorCode::ParseError, "unknown pre-code mode '" + mode + "'");
    }
    return pc;
}

}  // namespace rankdec
