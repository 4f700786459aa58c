#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankdec/code.hpp"
#include "rankdec/decoder.hpp"
#include "rankdec/linalg.hpp"

namespace rankdec {

using Basis = std::vector<std::vector<Elem>>;

/// Common zeros in F_{q1}^h of f_i(x) = sum_j gamma_j^i x_j^{d_j}, i = 1..v,
/// with d_j = r^{h-j}, repeated over Lambda' / h blocks. Since every d_j is a
/// power of r the f_i are F_r-linear and the zero set is an F_r-subspace.
struct EvasiveSet {
    std::uint64_t r = 0;
    unsigned v = 0;
    unsigned h = 0;
    unsigned lambda = 0;
    double epsilon = 0;
    unsigned Lambda = 0;  // F_r-dimension of the ambient product space
    unsigned blocks = 0;  // Lambda / (lambda h)
    FieldPtr fr;
    FieldPtr fq1;
    std::vector<Elem> points;           // gamma_1..gamma_h
    std::vector<unsigned> frob_powers;  // d_j = r^{frob_powers[j]}
    Basis block_basis;                  // vectors in F_r^{lambda h}

    std::uint64_t q1() const { return fq1->order(); }
    /// (f_1(x), ..., f_v(x)) for x in F_{q1}^h.
    std::vector<Elem> evaluate(std::span<const Elem> x) const;
    bool contains(std::span<const Elem> x) const;
    std::size_t block_dim() const { return block_basis.size(); }
    std::size_t dim() const { return block_basis.size() * blocks; }
    Basis basis() const;

    /// F_{q1}^h point <-> F_r coordinates (coordinate j, digit b at j lambda + b).
    std::vector<Elem> to_fr(std::span<const Elem> x) const;
    std::vector<Elem> from_fr(std::span<const Elem> coords) const;
};

/// Smallest divisor lambda of Lambda with r^lambda > Lambda, r^lambda > h and
/// h dividing Lambda / lambda; nullopt if none.
std::optional<unsigned> choose_lambda(std::uint64_t r, unsigned Lambda, unsigned h);

/// One block over F_{r^lambda}.
EvasiveSet build_evasive_block(FieldPtr fr, unsigned lambda, unsigned h, unsigned v);

/// h = ceil(v / epsilon); throws ParameterInfeasible (naming the smallest
/// feasible Lambda) when no lambda works or h does not divide Lambda / lambda.
EvasiveSet build_evasive(FieldPtr fr, unsigned v, double epsilon, unsigned Lambda);

struct SubspaceDesign {
    unsigned Lambda = 0;
    unsigned v = 0;
    std::vector<Basis> members;
    std::size_t declared_bound = 0;  // A
    std::size_t max_codim = 0;
    std::string mode;
    std::uint64_t seed = 0;

    std::size_t codim(std::size_t i) const { return Lambda - members[i].size(); }
};

enum class DesignMode { Combined, Random };

/// Source of F_{q1}-subspaces for the combined construction; any explicit
/// design can be plugged in here.
class DesignSource {
public:
    virtual ~DesignSource() = default;
    /// `count` subspaces of F^dim with codimension at most `codim`, as bases.
    virtual std::vector<Basis> subspaces(const GaloisField& F, unsigned dim, unsigned codim,
                                         unsigned count) const = 0;
};

class SeededRandomDesignSource : public DesignSource {
public:
    explicit SeededRandomDesignSource(std::uint64_t seed) : seed_(seed) {}
    std::vector<Basis> subspaces(const GaloisField& F, unsigned dim, unsigned codim, unsigned count) const override;

private:
    std::uint64_t seed_;
};

struct DesignOptions {
    std::optional<unsigned> codim;        // random mode: overrides ceil(epsilon Lambda)
    const DesignSource* source = nullptr; // combined mode: defaults to seeded random
};

/// Combined: H_i = V_i ∩ S with S the evasive set, bound 2v(h-1)/epsilon;
/// needs v <= epsilon Lambda' / 4. Random: M seeded subspaces of the given
/// codimension with declared bound floor(2v / epsilon).
SubspaceDesign build_design(FieldPtr fr, unsigned v, double epsilon, unsigned Lambda, unsigned M, DesignMode mode,
                            std::uint64_t seed, const DesignOptions& opts = {});

struct DesignCertificate {
    std::size_t max_sum = 0;
    std::size_t declared_bound = 0;
    bool passed = false;
    bool exhaustive = false;
    std::string method;
    std::uint64_t subspaces_checked = 0;
};

/// max over v-dimensional W of sum_i dim(H_i ∩ W). For v = 1 this is exact
/// via the intersection lattice of the members; otherwise all W are
/// enumerated when their number is at most `exhaustive_threshold`, else
/// `trials` seeded random W are tested.
DesignCertificate verify_design(const GaloisField& fr, const SubspaceDesign& design, unsigned v, std::size_t trials,
                                std::uint64_t exhaustive_threshold, std::uint64_t seed,
                                bool force_enumeration = false);

/// Number of v-dimensional subspaces of F_r^Lambda, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint64_t r, unsigned Lambda, unsigned v);

enum class PrecodeMode { Design, Hse };

struct PrecodedCode {
    PrecodeMode mode = PrecodeMode::Design;
    CodeParams params;

    // design mode
    double epsilon = 0;
    std::size_t design_bound = 0;
    std::uint64_t design_seed = 0;
    std::vector<Basis> block_bases;  // per block, in F_r^{block_dim}

    // hse mode
    double zeta = 0;
    unsigned alpha = 0;
    std::uint64_t seed = 0;
    Matrix generator;  // (m block_dim) x domain_dim over F_r, full column rank
    std::vector<std::string> guard_warnings;

    std::size_t domain_dim() const;
    double rate() const;
    /// Pre-message coordinates -> message coordinates.
    std::vector<Elem> expand(std::span<const Elem> x) const;
    MessagePoly message(std::span<const Elem> x) const;
    std::vector<Elem> random_premessage(Rng& rng) const;
    std::unique_ptr<CandidateFilter> filter() const;
};

PrecodedCode precode_design_build(const CodeParams& p, double epsilon, const SubspaceDesign& design);
PrecodedCode precode_hse_build(const CodeParams& p, double zeta, unsigned alpha, std::uint64_t seed);

/// ceil(4 (alpha + 1) / zeta).
std::size_t hse_list_cap(double zeta, unsigned alpha);
double hse_list_bound(double zeta, unsigned alpha);

void write_precode(std::ostream& os, const PrecodedCode& pc);
PrecodedCode read_precode(std::istream& is);

}  // namespace rankdec
