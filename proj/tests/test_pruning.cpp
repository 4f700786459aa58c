#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rankdec/channel.hpp"
#include "rankdec/error.hpp"
#include "rankdec/pruning.hpp"
#include "support.hpp"

using namespace rankdec;

namespace {

/// Zero set of the defining equations by brute force over F_{q1}^h.
std::vector<std::vector<Elem>> brute_zeros(const EvasiveSet& ev) {
    std::vector<std::vector<Elem>> out;
    const std::uint64_t q1 = ev.q1();
    std::vector<Elem> x(ev.h, 0);
    for (;;) {
        if (ev.contains(x)) out.push_back(x);
        unsigned j = 0;
        while (j < ev.h && ++x[j] == q1) x[j++] = 0;
        if (j == ev.h) break;
    }
    return out;
}

}  // namespace

TEST_CASE("evasive set at q1 = 81, h = 2, v = 1") {
    const auto ev = build_evasive(canonical_field(3), 1, 0.5, 32);
    CHECK(ev.q1() == 81);
    CHECK(ev.h == 2);
    CHECK(ev.lambda == 4);
    CHECK(ev.blocks == 4);
    const auto zeros = brute_zeros(ev);
    CHECK(zeros.size() == 81);
    // closed under addition and F_r scaling
    const GaloisField& F = *ev.fq1;
    std::set<std::vector<Elem>> zs(zeros.begin(), zeros.end());
    for (const auto& a : zeros)
        for (const auto& b : zeros) REQUIRE(zs.count({F.add(a[0], b[0]), F.add(a[1], b[1])}));
    for (const auto& a : zeros)
        for (Elem c = 0; c < 3; ++c) REQUIRE(zs.count({F.mul(c, a[0]), F.mul(c, a[1])}));
    // the F_r basis spans exactly the zero set
    std::set<std::vector<Elem>> from_basis;
    for (const auto& v : testsupport::enumerate_span(*ev.fr, ev.block_basis, ev.lambda * ev.h))
        from_basis.insert(ev.from_fr(v));
    CHECK(from_basis == zs);
    CHECK(ev.dim() == 16);  // (1 - v/h) Lambda
}

TEST_CASE("evasive set cardinality q1^{h-v}") {
    const auto fr = canonical_field(3);
    struct Case { unsigned lambda, h, v; std::size_t count; };
    for (const Case c : {Case{4, 3, 1, 81 * 81}, Case{4, 3, 2, 81}, Case{2, 3, 1, 81}, Case{2, 3, 2, 9},
                         Case{3, 2, 1, 27}}) {
        const auto ev = build_evasive_block(fr, c.lambda, c.h, c.v);
        CHECK(brute_zeros(ev).size() == c.count);
        CHECK(ev.block_dim() == c.lambda * (c.h - c.v));
    }
}

TEST_CASE("evasive set meets random lines in few points") {
    const auto ev = build_evasive(canonical_field(3), 1, 0.5, 32);
    const GaloisField& F = *ev.fq1;
    Rng rng(113);
    const std::uint64_t bound = 3;  // d_1^v = r^{v(h-1)}
    for (int t = 0; t < 200; ++t) {
        const std::vector<Elem> a{F.random(rng), F.random(rng)};
        const std::vector<Elem> b{F.random_nonzero(rng), F.random(rng)};
        std::uint64_t hits = 0;
        for (Elem s = 0; s < F.order(); ++s)
            hits += ev.contains(std::vector<Elem>{F.add(a[0], F.mul(s, b[0])), F.add(a[1], F.mul(s, b[1]))});
        REQUIRE(hits <= bound);
    }
}

TEST_CASE("extension degree selection and infeasibility") {
    CHECK(choose_lambda(3, 32, 2) == 4u);
    CHECK_FALSE(choose_lambda(3, 7, 2).has_value());
    try {
        build_evasive(canonical_field(3), 1, 0.5, 7);
        FAIL("expected ParameterInfeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterInfeasible);
        CHECK(std::string(e.what()).find("smallest feasible Lambda is 8") != std::string::npos);
    }
    try {
        build_design(canonical_field(3), 2, 0.5, 32, 3, DesignMode::Combined, 1);
        FAIL("expected ParameterInfeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterInfeasible);
    }
}

TEST_CASE("design verifier trivial cases") {
    const auto fr = canonical_field(3);
    SubspaceDesign full;
    full.Lambda = 4;
    full.v = 1;
    full.declared_bound = 1;
    full.members.push_back({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    for (bool force : {false, true}) {
        const auto c = verify_design(*fr, full, 1, 0, 1000, 1, force);
        CHECK(c.max_sum == 1);
        CHECK(c.passed);
    }
    SubspaceDesign empty = full;
    empty.members.assign(3, {});
    empty.declared_bound = 0;
    for (bool force : {false, true}) CHECK(verify_design(*fr, empty, 1, 0, 1000, 1, force).max_sum == 0);
    CHECK(gaussian_binomial(3, 4, 1) == 40);
    CHECK(gaussian_binomial(3, 4, 2) == 130);
    CHECK(gaussian_binomial(2, 5, 2) == 155);
}

TEST_CASE("verifier methods agree") {
    const auto fr = canonical_field(3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        DesignOptions opts;
        opts.codim = 2;
        const auto d = build_design(fr, 1, 0.5, 6, 5, DesignMode::Random, seed, opts);
        const auto lattice = verify_design(*fr, d, 1, 0, 0, 1);
        const auto exhaustive = verify_design(*fr, d, 1, 0, 0, 1, true);
        CHECK(lattice.method == "intersection-lattice");
        CHECK(exhaustive.method == "enumeration");
        CHECK(exhaustive.subspaces_checked == gaussian_binomial(3, 6, 1));
        CHECK(lattice.max_sum == exhaustive.max_sum);
        // v = 2 enumeration versus random sampling never exceeds it
        const auto all2 = verify_design(*fr, d, 2, 0, 1000000, 1);
        const auto rnd2 = verify_design(*fr, d, 2, 200, 0, 9);
        CHECK(all2.exhaustive);
        CHECK_FALSE(rnd2.exhaustive);
        CHECK(rnd2.max_sum <= all2.max_sum);
        CHECK(verify_design(*fr, d, 2, 200, 0, 9).max_sum == rnd2.max_sum);
    }
}

TEST_CASE("random design reproducible per seed") {
    const auto fr = canonical_field(3);
    DesignOptions opts;
    opts.codim = 8;
    const auto a = build_design(fr, 1, 8.0 / 30, 30, 4, DesignMode::Random, 7, opts);
    const auto b = build_design(fr, 1, 8.0 / 30, 30, 4, DesignMode::Random, 7, opts);
    const auto c = build_design(fr, 1, 8.0 / 30, 30, 4, DesignMode::Random, 8, opts);
    CHECK(a.members == b.members);
    CHECK_FALSE(a.members == c.members);
    for (std::size_t i = 0; i < a.members.size(); ++i) CHECK(a.codim(i) == 8);
    CHECK(a.declared_bound == 7);
}

TEST_CASE("combined design") {
    const auto fr = canonical_field(3);
    const double eps = 0.25;
    const auto d = build_design(fr, 1, eps, 64, 6, DesignMode::Combined, 5);
    CHECK(d.mode == "combined");
    CHECK(d.declared_bound == 24);  // 2 v (h - 1) / eps with h = 4
    for (std::size_t i = 0; i < d.members.size(); ++i) CHECK(d.codim(i) <= 2 * eps * 64);
    // members sit inside the evasive set
    const auto ev = build_evasive(fr, 1, eps, 64);
    const auto S = ev.basis();
    for (const auto& H : d.members)
        for (const auto& x : H) CHECK(linalg::in_span(*fr, S, x));
    const auto cert = verify_design(*fr, d, 1, 0, 0, 1);
    CHECK(cert.passed);
}

TEST_CASE("design pre-code") {
    const auto p = CodeParams::make(3, 1, 5, 2, 2, 2);
    const auto fr = p.tower->fr_ptr();
    const double eps = 0.2;
    const auto design = build_design(fr, 1, eps, 10, 2, DesignMode::Random, 3);
    const auto pc = precode_design_build(p, eps, design);
    const double R = derive_parameters(p).rate;
    CHECK(pc.rate() >= R - 2 * eps - 1e-12);
    CHECK(pc.domain_dim() >= p.m * (p.block_dim() - 2 * eps * 10) - 1e-9);

    const auto filter = pc.filter();
    Rng rng(127);
    for (int t = 0; t < 20; ++t) {
        const auto x = pc.random_premessage(rng);
        const auto f = pc.message(x);
        // a pre-coded codeword is a codeword of the base code
        CHECK(encode(p, f) == testsupport::reference_encode(p, f));
        const unsigned e = static_cast<unsigned>(rng.uniform(2));
        const auto y = add_rank_errors(*p.tower, encode(p, f), {e, rng.next()});
        EnumerateOptions opts;
        opts.verify_periodicity = true;
        const auto res = decode(y, e, p, filter.get(), opts);
        REQUIRE(std::find(res.preimages.begin(), res.preimages.end(), x) != res.preimages.end());
        for (std::size_t i = 0; i < res.list.size(); ++i) CHECK(pc.message(res.preimages[i]) == res.list[i]);
        CHECK(res.stats.periodicity_violations == 0);
        CHECK(res.stats.candidates <= static_cast<std::size_t>(std::pow(3.0, static_cast<double>(pc.design_bound))));
    }

    std::stringstream ss;
    write_precode(ss, pc);
    const auto back = read_precode(ss);
    CHECK(back.block_bases == pc.block_bases);
    CHECK(back.design_bound == pc.design_bound);
}

TEST_CASE("design pre-code list is an affine space inside the design") {
    // hand-built Q whose step kernel is the constants, so blocks really branch
    const auto p = CodeParams::make(3, 1, 3, 2, 2, 2);
    const auto fr = p.tower->fr_ptr();
    const GaloisField& F = p.tower->fqn();
    DesignOptions opts;
    opts.codim = 2;
    const auto design = build_design(fr, 1, 2.0 / 6, 6, 2, DesignMode::Random, 11, opts);
    const auto pc = precode_design_build(p, 2.0 / 6, design);
    InterpolationPoly Q;
    Q.a0.assign(3, UniPoly(std::vector<Elem>(2, 0)));
    Q.aw.assign(2, std::vector<UniPoly>(2, UniPoly(std::vector<Elem>(1, 0))));
    Q.aw[0][0] = UniPoly({1});
    Q.aw[1][0] = UniPoly({F.neg(1)});
    const auto space = build_candidate_space(Q, p);
    const auto filter = pc.filter();
    const auto en = enumerate_list(space, filter.get(), {});
    REQUIRE_FALSE(en.candidates.empty());
    // differences from the first candidate form a subspace of matching size
    std::vector<std::vector<Elem>> diffs;
    for (const auto& c : en.candidates) {
        std::vector<Elem> d(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) d[i] = fr->sub(c[i], en.candidates[0][i]);
        diffs.push_back(d);
    }
    const auto basis = linalg::span_basis(*fr, diffs, diffs[0].size());
    CHECK(en.candidates.size() == static_cast<std::size_t>(std::pow(3.0, static_cast<double>(basis.size()))));
    CHECK(basis.size() <= pc.design_bound);
    // every candidate block lies in its design member
    for (std::size_t i = 0; i < en.candidates.size(); ++i) CHECK(pc.expand(en.preimages[i]) == en.candidates[i]);
}

TEST_CASE("hse pre-code") {
    const auto p = CodeParams::make(3, 1, 15, 2, 1, 2);
    const auto pc = precode_hse_build(p, 0.1, 2, 5);
    CHECK(pc.generator.rows() == 30);
    CHECK(pc.generator.cols() == 24);
    CHECK(linalg::rank(p.tower->fr(), pc.generator) == 24);
    CHECK(pc.rate() == doctest::Approx((1 - 2 * 0.1) * derive_parameters(p).rate).epsilon(1e-12));
    CHECK(pc.guard_warnings.size() == 2);  // desk scale relaxes both guards
    CHECK(hse_list_cap(0.1, 2) == 120);
    CHECK(hse_list_bound(0.1, 2) == doctest::Approx(120));

    const auto filter = pc.filter();
    Rng rng(131);
    for (int t = 0; t < 10; ++t) {
        const auto x = pc.random_premessage(rng);
        const auto f = pc.message(x);
        const auto y = add_rank_errors(*p.tower, encode(p, f), {8, rng.next()});
        const auto res = decode(y, 8, p, filter.get());
        REQUIRE(std::find(res.preimages.begin(), res.preimages.end(), x) != res.preimages.end());
        CHECK(res.stats.candidates <= 30);
    }

    std::stringstream ss;
    write_precode(ss, pc);
    const auto back = read_precode(ss);
    CHECK(back.generator == pc.generator);
    CHECK(back.zeta == pc.zeta);
    CHECK(back.alpha == pc.alpha);

    std::stringstream bad("rankdec-precode v2\n");
    CHECK_THROWS_AS(read_precode(bad), Error);
}

TEST_CASE("hse filter prunes a nontrivial kernel") {
    // step kernel = constants (dim 3 per block, 729 unfiltered candidates)
    const auto p = CodeParams::make(3, 1, 3, 2, 2, 2);
    const GaloisField& F = p.tower->fqn();
    InterpolationPoly Q;
    Q.a0.assign(3, UniPoly(std::vector<Elem>(2, 0)));
    Q.aw.assign(2, std::vector<UniPoly>(2, UniPoly(std::vector<Elem>(1, 0))));
    Q.aw[0][0] = UniPoly({1});
    Q.aw[1][0] = UniPoly({F.neg(1)});
    const auto space = build_candidate_space(Q, p);
    const auto all = enumerate_list(space, nullptr, {});
    std::set<std::vector<Elem>> all_set(all.candidates.begin(), all.candidates.end());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto pc = precode_hse_build(p, 0.25, 1, seed);
        const auto filter = pc.filter();
        const auto en = enumerate_list(space, filter.get(), {});
        // exactly the unfiltered candidates lying in the image of G
        std::size_t in_image = 0;
        for (const auto& c : all_set)
            in_image += linalg::solve(p.tower->fr(), pc.generator, c).has_value();
        CHECK(en.candidates.size() == in_image);
        for (std::size_t i = 0; i < en.candidates.size(); ++i) {
            CHECK(all_set.count(en.candidates[i]));
            CHECK(pc.expand(en.preimages[i]) == en.candidates[i]);
        }
    }
}
