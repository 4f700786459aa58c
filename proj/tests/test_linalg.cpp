#include <doctest.h>

#include "rankdec/linalg.hpp"
#include "support.hpp"

using namespace rankdec;

namespace {

Matrix random_matrix(const GaloisField& F, std::size_t rows, std::size_t cols, Rng& rng, std::size_t rank_cap) {
    // product of rows x rank_cap and rank_cap x cols factors, so rank <= rank_cap
    Matrix a(rows, rank_cap), b(rank_cap, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rank_cap; ++j) a(i, j) = F.random(rng);
    for (std::size_t i = 0; i < rank_cap; ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = F.random(rng);
    return linalg::multiply(F, a, b);
}

std::vector<std::vector<Elem>> rows_of(const Matrix& m) {
    std::vector<std::vector<Elem>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
    return out;
}

}  // namespace

TEST_CASE("rank, kernel and solve agree with reference elimination") {
    Rng rng(41);
    for (std::uint64_t r : {2u, 3u, 4u, 9u}) {
        const auto F = canonical_field(r);
        for (int t = 0; t < 100; ++t) {
            const std::size_t rows = 1 + rng.uniform(7), cols = 1 + rng.uniform(7);
            const Matrix a = random_matrix(*F, rows, cols, rng, 1 + rng.uniform(6));
            const std::size_t rk = linalg::rank(*F, a);
            REQUIRE(rk == testsupport::reference_rank(*F, rows_of(a)));
            const auto ker = linalg::kernel(*F, a);
            REQUIRE(ker.size() == cols - rk);
            for (const auto& v : ker) REQUIRE(linalg::apply(*F, a, v) == std::vector<Elem>(rows, 0));
            if (!ker.empty()) REQUIRE(linalg::rank(*F, Matrix::from_rows(ker, cols)) == ker.size());

            std::vector<Elem> x(cols);
            for (auto& e : x) e = F->random(rng);
            const auto b = linalg::apply(*F, a, x);
            const auto sol = linalg::solve(*F, a, b);
            REQUIRE(sol.has_value());
            REQUIRE(linalg::apply(*F, a, sol->point) == b);
            REQUIRE(sol->dim() == ker.size());

            const linalg::LinearSolver solver(*F, a);
            const auto p = solver.particular(b);
            REQUIRE(p.has_value());
            REQUIRE(linalg::apply(*F, a, *p) == b);
            REQUIRE(solver.rank() == rk);
        }
    }
}

TEST_CASE("inconsistent systems") {
    const auto F = canonical_field(3);
    const Matrix a = Matrix::from_rows({{1, 1}, {2, 2}}, 2);
    CHECK_FALSE(linalg::solve(*F, a, std::vector<Elem>{1, 1}).has_value());
    CHECK(linalg::solve(*F, a, std::vector<Elem>{1, 2}).has_value());
    CHECK_FALSE(linalg::LinearSolver(*F, a).particular(std::vector<Elem>{0, 1}).has_value());
}

TEST_CASE("intersection and annihilator against enumeration") {
    const auto F = canonical_field(3);
    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const std::size_t dim = 5;
        std::vector<std::vector<Elem>> u(2 + rng.uniform(2), std::vector<Elem>(dim)), v(2 + rng.uniform(2), std::vector<Elem>(dim));
        for (auto& x : u)
            for (auto& e : x) e = F->random(rng);
        for (auto& x : v)
            for (auto& e : x) e = F->random(rng);
        const auto su = testsupport::enumerate_span(*F, u, dim), sv = testsupport::enumerate_span(*F, v, dim);
        std::set<std::vector<Elem>> both;
        for (const auto& x : su)
            if (sv.count(x)) both.insert(x);
        const auto meet = linalg::intersect(*F, u, v, dim);
        CHECK(testsupport::enumerate_span(*F, meet, dim) == both);

        const Matrix ann = linalg::annihilator(*F, u, dim);
        for (const auto& x : su) CHECK(linalg::apply(*F, ann, x) == std::vector<Elem>(ann.rows(), 0));
        CHECK(ann.rows() + linalg::span_basis(*F, u, dim).size() == dim);
        for (const auto& x : v) CHECK(linalg::in_span(*F, u, x) == (su.count(x) > 0));
    }
}

TEST_CASE("affine enumeration") {
    const auto F = canonical_field(3);
    linalg::AffineSpace s{{1, 0, 0}, {{0, 1, 0}, {0, 0, 1}}};
    const auto pts = linalg::enumerate(*F, s);
    CHECK(pts.size() == 9);
    CHECK(std::set<std::vector<Elem>>(pts.begin(), pts.end()).size() == 9);
    for (const auto& p : pts) CHECK(p[0] == 1);
}
