#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "starq/weyl.hpp"

#include <algorithm>

using namespace starq;
using tutil::P;
using tutil::W;

using tutil::weyl_permutation_oracle;

TEST_CASE("degree <= 1 is the identity correspondence") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext ctx(su2, sv);
    CHECK(ctx.sym(P(sv, "x")) == W(su2, sv, "X"));
    CHECK(ctx.sym(P(sv, "1")) == EnvElem::unit(sv));
    CHECK(ctx.sym(Polynomial::zero(sv)).is_zero());
}

TEST_CASE("degree-2 hand values on su2") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext ctx(su2, sv);
    CHECK(ctx.sym(P(sv, "x*y")) == W(su2, sv, "X*Y - 1/2*h*Z"));
    CHECK(ctx.sym(P(sv, "x*z")) == W(su2, sv, "X*Z + 1/2*h*Y"));
    CHECK(ctx.sym(P(sv, "x^2+y^2+z^2")) == W(su2, sv, "X^2 + Y^2 + Z^2"));
}

TEST_CASE("generating-function implementation equals the permutation-sum oracle") {
    for (const auto& name : {"su2", "heisenberg"}) {
        LieAlgebra L = *LieAlgebra::builtin(name);
        auto vars = L.dual_vars();
        WeylContext ctx(L, vars);
        for (const auto& m : coordinate_monomials(*vars, 4))
            CHECK(ctx.sym(Polynomial::monomial(vars, m, Scalar(1))) ==
                  weyl_permutation_oracle(m, L, vars));
    }
}

TEST_CASE("linearity with polynomial-in-h coefficients") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars({"r"});
    WeylContext ctx(su2, sv);
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        Polynomial f = tutil::random_poly(rng, sv, 4, 4, true);
        Polynomial g = tutil::random_poly(rng, sv, 4, 4, true);
        CHECK(ctx.sym(f + g) == ctx.sym(f) + ctx.sym(g));
        Polynomial a = P(sv, "2 - 3*h*r");
        CHECK(ctx.sym(a * f) == ctx.sym(f).scale(a));
    }
}

TEST_CASE("triangularity: W(m) - m is h-divisible with strictly shorter words") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext ctx(su2, sv);
    int h = sv->h_index();
    for (const auto& m : coordinate_monomials(*sv, 6)) {
        EnvElem diff = ctx.sym(Polynomial::monomial(sv, m, Scalar(1)));
        Word sorted_word;
        for (int g = 0; g < 3; ++g)
            for (int t = 0; t < m.deg(*sv->index_of(su2.coords()[static_cast<size_t>(g)])); ++t)
                sorted_word.push_back(g);
        diff.add_term(sorted_word, Polynomial::constant(sv, Scalar(-1)));
        for (const auto& [w, c] : diff.terms()) {
            CHECK(w.size() < sorted_word.size());
            CHECK(c.h_coefficient(0).is_zero()); // every correction carries h
        }
    }
}

TEST_CASE("weyl_inv inverts weyl_sym on random polynomials to degree 5") {
    for (const auto& name : {"su2", "heisenberg", "sl2"}) {
        LieAlgebra L = *LieAlgebra::builtin(name);
        auto vars = L.dual_vars();
        WeylContext ctx(L, vars);
        std::mt19937 rng(1000 + L.dim());
        for (int rep = 0; rep < 10; ++rep) {
            Polynomial f = tutil::random_poly(rng, vars, 5, 5, true);
            CHECK(ctx.inv(ctx.sym(f)) == f);
        }
    }
}

TEST_CASE("weyl_inv frozen degree-2 values") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext sctx(su2, sv);
    CHECK(sctx.inv(W(su2, sv, "X*Y")) == P(sv, "x*y + 1/2*h*z"));

    auto heis = LieAlgebra::heisenberg();
    auto hv = heis.dual_vars();
    WeylContext hctx(heis, hv);
    CHECK(hctx.inv(W(heis, hv, "Q*P")) == P(hv, "q*p + 1/2*h*e'"));
}

TEST_CASE("weyl_inv rejects coefficients that contain coordinates") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext ctx(su2, sv);
    EnvElem bad(sv);
    bad.add_term(Word{0}, P(sv, "x"));
    CHECK_THROWS_AS(ctx.inv(bad), std::invalid_argument);
}

TEST_CASE("intertwining with inner derivations") {
    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    WeylContext ctx(su2, sv);
    for (int k = 0; k < 3; ++k) CHECK(ctx.check_intertwining(su2.ad_matrix(k), 3).pass);

    SUBCASE("the zero map passes trivially") {
        CHECK(ctx.check_intertwining(ScalarMatrix(3, 3), 3).pass);
    }
    SUBCASE("a non-derivation is rejected with a witness") {
        ScalarMatrix D = ScalarMatrix::identity(3); // Id is not a derivation of su2
        Report rep = ctx.check_intertwining(D, 2);
        CHECK_FALSE(rep.pass);
        REQUIRE_FALSE(rep.witnesses.empty());
        CHECK(rep.witnesses.front().find("not a derivation") != std::string::npos);
    }
}

TEST_CASE("intertwining also holds for heisenberg inner derivations") {
    auto heis = LieAlgebra::heisenberg();
    auto hv = heis.dual_vars();
    WeylContext ctx(heis, hv);
    for (int k = 0; k < 3; ++k) CHECK(ctx.check_intertwining(heis.ad_matrix(k), 3).pass);
}
