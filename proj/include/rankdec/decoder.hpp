#pragma once

#include <any>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "rankdec/code.hpp"
#include "rankdec/linalg.hpp"

namespace rankdec {

/// Q = A_0(x, y) + sum_{w=1..s} A_w(x, z_w) with
///   A_0 = sum_{u < n-e} A_{0,u}(x) y^{q^u},        deg A_{0,u} < r-1
///   A_w = sum_{i <= n-e-m} A_{w,i}(x) z_w^{q^i},   deg A_{w,i} < r-k
struct InterpolationPoly {
    unsigned e = 0;
    std::vector<UniPoly> a0;
    std::vector<std::vector<UniPoly>> aw;  // aw[w-1][i]
    std::size_t unknowns = 0;
    std::size_t constraints = 0;

    bool is_zero() const;
    unsigned max_shift() const { return aw.empty() ? 0 : static_cast<unsigned>(aw[0].size() - 1); }
};

/// Requires e < s(r-k)(n-m+1)/(r-1+s(r-k)); throws RadiusTooLarge otherwise.
/// Returns the null-space vector of the reduced echelon form whose free
/// variable has the smallest index (A_0 unknowns first, then A_1..A_s).
InterpolationPoly interpolate(const ReceivedWord& y, unsigned e, const CodeParams& p);

/// Q(x0, y, z_1, ..., z_s).
Elem evaluate(const Tower& T, const InterpolationPoly& Q, Elem x0, Elem y, std::span<const Elem> z);

/// Left side of the u-th coefficient identity
///   A_{0,u}(x) + sum_w sum_{i+v=u} A_{w,i}(x) f_v^{(i)}(gamma^{w-1} x)
/// computed directly with polynomial arithmetic.
UniPoly identity_residual(const CodeParams& p, const InterpolationPoly& Q, const MessagePoly& f, unsigned u);

/// Message <-> F_r coordinates: block v, coefficient c, digit b at
/// v * block_dim + c * (ell n) + b.
std::vector<Elem> to_coordinates(const CodeParams& p, const MessagePoly& f);
MessagePoly from_coordinates(const CodeParams& p, std::span<const Elem> coords);

/// The coefficient identities as an F_r-linear system. Identity u reads
///   constants[u] + sum_v shift_maps[u - v] * block_v = 0
/// over 0 <= u - v <= max_shift, where each identity contributes (r-1) ell n
/// rows (coefficient of x^d, then F_r digit).
struct IdentitySystem {
    unsigned identities = 0;
    unsigned rows_per_identity = 0;
    unsigned block_dim = 0;
    unsigned blocks = 0;
    unsigned max_shift = 0;
    std::vector<std::vector<Elem>> constants;
    std::vector<Matrix> shift_maps;

    const Matrix& step_operator() const { return shift_maps[0]; }
    Matrix global_matrix(const GaloisField& Fr) const;
    std::vector<Elem> global_rhs(const GaloisField& Fr) const;
    /// constants[u] + sum_v shift_maps[u-v] * block_v for full coordinates.
    std::vector<Elem> residual(const GaloisField& Fr, std::span<const Elem> coords, unsigned u) const;
};

IdentitySystem coefficient_identities(const InterpolationPoly& Q, const CodeParams& p);

/// Joint solution of every identity over all m * block_dim coordinates.
std::optional<linalg::AffineSpace> global_solve(const IdentitySystem& sys, const GaloisField& Fr);
std::optional<linalg::AffineSpace> global_solve(const InterpolationPoly& Q, const CodeParams& p);

/// Block-by-block view of the identity solutions. Step a solves the u = a
/// identity for block a with the earlier blocks moved to the constant side;
/// the homogeneous part is the same step operator at every a, so every
/// consistent step yields a coset of the common kernel W.
class CandidateSpace {
public:
    CandidateSpace(const CodeParams& p, IdentitySystem sys);

    const CodeParams& params() const { return params_; }
    const IdentitySystem& system() const { return sys_; }
    const GaloisField& fr() const { return params_.tower->fr(); }

    /// Step operator is the zero map: the recursion cannot isolate a block,
    /// so cosets come from the joint system instead.
    bool degenerate() const { return degenerate_; }
    const std::vector<std::vector<Elem>>& kernel() const { return solver_.kernel_basis(); }
    std::size_t kernel_dim() const { return kernel().size(); }

    /// v_a + W for the given prefix (coordinates of blocks 0..a-1), or
    /// nullopt when step a is inconsistent.
    std::optional<linalg::AffineSpace> block_coset(unsigned a, std::span<const Elem> prefix) const;

    /// Projection onto block a of the joint solutions extending the prefix.
    std::optional<linalg::AffineSpace> conditioned_projection(unsigned a, std::span<const Elem> prefix) const;

    /// Every identity, including u >= m that the recursion never solves for.
    bool satisfies_all(std::span<const Elem> coords) const;

private:
    CodeParams params_;
    IdentitySystem sys_;
    linalg::LinearSolver solver_;
    bool degenerate_ = false;
};

CandidateSpace build_candidate_space(const InterpolationPoly& Q, const CodeParams& p);

/// Restricts the per-block enumeration to a pre-code. State is opaque to
/// the enumerator and threaded from parent to child.
class CandidateFilter {
public:
    struct Branch {
        std::vector<Elem> block;
        std::any state;
    };

    virtual ~CandidateFilter() = default;
    virtual std::any root() const = 0;
    virtual std::vector<Branch> expand(const std::any& state, unsigned block,
                                       const linalg::AffineSpace& coset) const = 0;
    /// Pre-code domain coordinates of an accepted full candidate.
    virtual std::vector<Elem> preimage(const std::any& leaf, std::span<const Elem> coords) const = 0;
    virtual std::size_t default_max_list() const = 0;
};

struct EnumerateOptions {
    std::size_t max_list = 0;  // 0: default cap
    bool verify_periodicity = false;
};

struct Enumeration {
    std::vector<std::vector<Elem>> candidates;  // message coordinates
    std::vector<std::vector<Elem>> preimages;   // filled when a filter is active
    bool overflow = false;
    std::size_t branches = 0;
    std::size_t pruned = 0;
    std::size_t periodicity_checks = 0;
    std::size_t periodicity_violations = 0;
};

std::size_t default_max_list(const CandidateSpace& space, const CandidateFilter* filter);

/// Depth-first traversal over blocks 0..m-1.
Enumeration enumerate_list(const CandidateSpace& space, const CandidateFilter* filter,
                           const EnumerateOptions& opts = {});

struct DecodeStats {
    std::size_t kernel_dim = 0;
    std::size_t list_size = 0;
    std::size_t candidates = 0;  // before the rank post-filter
    std::size_t branches = 0;
    std::size_t pruned = 0;
    std::size_t interp_unknowns = 0;
    std::size_t interp_constraints = 0;
    bool degenerate = false;
    bool overflow = false;
    bool kernel_within_fold_bound = true;  // dim W <= ell n (s-1)
    bool kernel_within_s_minus_1 = true;   // dim W <= s-1
    std::size_t periodicity_checks = 0;
    std::size_t periodicity_violations = 0;
};

struct DecodeResult {
    std::vector<MessagePoly> list;
    std::vector<std::vector<Elem>> preimages;
    DecodeStats stats;
};

/// interpolate -> build_candidate_space -> enumerate_list -> keep candidates
/// within rank distance e of y. The list is sorted by canonical encoding.
DecodeResult decode(const ReceivedWord& y, unsigned e, const CodeParams& p, const CandidateFilter* filter = nullptr,
                    const EnumerateOptions& opts = {});

}  // namespace rankdec
