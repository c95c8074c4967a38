#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "starq/liealg.hpp"
#include "starq/loaders.hpp"

#include <sstream>

using namespace starq;
using tutil::P;

TEST_CASE("builtin algebras validate") {
    CHECK(LieAlgebra::su2().validate().pass);
    CHECK(LieAlgebra::heisenberg().validate().pass);
    CHECK(LieAlgebra::sl2().validate().pass);
    CHECK(LieAlgebra::builtin("su2"));
    CHECK_FALSE(LieAlgebra::builtin("e8"));
}

TEST_CASE("antisymmetry violation is detected with a witness") {
    // c_12^1 = 1 = c_21^1: symmetric, not antisymmetric.
    std::vector<Scalar> c(8, Scalar(0));
    c[static_cast<size_t>((0 * 2 + 1) * 2 + 0)] = Scalar(1);
    c[static_cast<size_t>((1 * 2 + 0) * 2 + 0)] = Scalar(1);
    LieAlgebra bad = LieAlgebra::from_structure("bad", {"A", "B"}, {"a", "b"}, c);
    Report rep = bad.validate();
    CHECK_FALSE(rep.pass);
    CHECK(rep.witnesses.front().find("antisymmetry") != std::string::npos);
}

TEST_CASE("Jacobi violation is detected with a witness quadruple") {
    // [A,B]=C, [A,C]=B, [B,C]=A fails Jacobi.
    std::vector<Scalar> c(27, Scalar(0));
    auto set = [&](int i, int j, int k, int v) {
        c[static_cast<size_t>((i * 3 + j) * 3 + k)] = Scalar(v);
        c[static_cast<size_t>((j * 3 + i) * 3 + k)] = Scalar(-v);
    };
    set(0, 1, 2, 1);
    set(0, 2, 1, 1);
    set(1, 2, 0, 1);
    LieAlgebra bad = LieAlgebra::from_structure("bad", {"A", "B", "C"}, {"a", "b", "c"}, c);
    Report rep = bad.validate();
    CHECK_FALSE(rep.pass);
    CHECK(rep.witnesses.front().find("Jacobi") != std::string::npos);
}

TEST_CASE("Kirillov bracket on the builtins") {
    auto heis = LieAlgebra::heisenberg();
    auto hv = heis.dual_vars();
    CHECK(heis.kirillov(P(hv, "q"), P(hv, "p")) == P(hv, "e'"));

    auto su2 = LieAlgebra::su2();
    auto sv = su2.dual_vars();
    CHECK(su2.kirillov(P(sv, "x"), P(sv, "y")) == P(sv, "z"));
    CHECK(su2.kirillov(P(sv, "y"), P(sv, "z")) == P(sv, "x"));

    std::mt19937 rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        Polynomial f = tutil::random_poly(rng, sv, 4, 4);
        CHECK(su2.kirillov(f, f).is_zero());
    }
}

TEST_CASE("bracket of linear coordinates reproduces the structure constants") {
    for (const auto& name : {"heisenberg", "su2", "sl2"}) {
        LieAlgebra L = *LieAlgebra::builtin(name);
        auto vars = L.dual_vars();
        for (int i = 0; i < L.dim(); ++i)
            for (int j = 0; j < L.dim(); ++j) {
                Polynomial xi = Polynomial::variable(vars, i);
                Polynomial xj = Polynomial::variable(vars, j);
                CHECK(L.kirillov(xi, xj) == L.bracket_basis(vars, i, j));
            }
    }
}

TEST_CASE("Poisson axioms hold for su2 and heisenberg to degree 3") {
    CHECK(LieAlgebra::su2().poisson_properties(3).pass);
    CHECK(LieAlgebra::heisenberg().poisson_properties(3).pass);
}

TEST_CASE("corrupted tensor fails the Poisson suite with a witness") {
    // su2 with one constant tampered: breaks Jacobi.
    auto good = LieAlgebra::su2();
    std::vector<Scalar> c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c.push_back(good.c(i, j, k));
    c[static_cast<size_t>((1 * 3 + 2) * 3 + 0)] = Scalar(2);
    c[static_cast<size_t>((2 * 3 + 1) * 3 + 0)] = Scalar(-2);
    LieAlgebra bad = LieAlgebra::from_structure("bad", good.basis(), good.coords(), c);
    Report rep = bad.poisson_properties(2);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("su2 Casimir is central for the Kirillov structure to degree 5") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars();
    Polynomial p = P(vars, "x^2+y^2+z^2");
    for (const auto& f : tutil::monomial_polys(vars, 5)) CHECK(su2.kirillov(p, f).is_zero());
}

TEST_CASE("Heisenberg group composition and coadjoint matrices") {
    HeisenbergElement id{Scalar(0), Scalar(0), Scalar(0)};
    CHECK(heisenberg_coadjoint(id) == ScalarMatrix::identity(3));

    HeisenbergElement g{Scalar(2), Scalar(-3), Scalar(5)};
    ScalarMatrix m = heisenberg_coadjoint(g);
    CHECK(m.at(0, 2) == Scalar(-3));
    CHECK(m.at(1, 2) == Scalar(-2));
    CHECK(m.at(2, 2) == Scalar(1));
    // the third row is (0,0,1): e' is preserved for every g
    CHECK(m.at(2, 0) == Scalar(0));
    CHECK(m.at(2, 1) == Scalar(0));

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int rep = 0; rep < 20; ++rep) {
        HeisenbergElement a{Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng))};
        HeisenbergElement b{Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng))};
        HeisenbergElement c{Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng))};
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
        CHECK(heisenberg_coadjoint(a.compose(b)) ==
              heisenberg_coadjoint(a) * heisenberg_coadjoint(b));
    }
}

TEST_CASE("algebra file loader") {
    SUBCASE("su2 round trip") {
        std::istringstream in(
            "# su2\n"
            "dim 3\n"
            "basis X Y Z\n"
            "bracket X Y = Z\n"
            "bracket Y Z = X\n"
            "bracket Z X = Y\n");
        LieAlgebra L = load_algebra(in);
        LieAlgebra ref = LieAlgebra::su2();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) CHECK(L.c(i, j, k) == ref.c(i, j, k));
    }
    SUBCASE("omitted brackets give the abelian algebra") {
        std::istringstream in("dim 2\nbasis A B\n");
        LieAlgebra L = load_algebra(in);
        auto vars = L.dual_vars();
        CHECK(L.kirillov(P(vars, "a^2*b"), P(vars, "b")).is_zero());
    }
    SUBCASE("bracket X X = Y is an antisymmetry rejection") {
        std::istringstream in("dim 2\nbasis X Y\nbracket X X = Y\n");
        CHECK_THROWS_AS(load_algebra(in), LoadError);
    }
    SUBCASE("Jacobi failure is rejected with a witness") {
        std::istringstream in(
            "dim 3\nbasis A B C\nbracket A B = C\nbracket A C = B\nbracket B C = A\n");
        CHECK_THROWS_WITH_AS(load_algebra(in), doctest::Contains("Jacobi"), LoadError);
    }
    SUBCASE("parse errors carry line numbers") {
        std::istringstream in("dim 2\nbasis A B\nbracket A B = $\n");
        try {
            load_algebra(in);
            CHECK(false);
        } catch (const LoadError& e) {
            CHECK(e.line == 3);
        }
    }
    SUBCASE("scaled brackets parse") {
        std::istringstream in(
            "dim 3\nbasis X Y Z\nbracket X Y = Z\nbracket Z X = 2*X\nbracket Z Y = -2*Y\n");
        LieAlgebra L = load_algebra(in);
        CHECK(L.validate().pass);
        CHECK(L.c(2, 0, 0) == Scalar(2));
    }
}

TEST_CASE("ad matrices are derivations (consistency with the tensor)") {
    auto su2 = LieAlgebra::su2();
    ScalarMatrix adX = su2.ad_matrix(0);
    // ad_X(Y) = Z, ad_X(Z) = -Y
    CHECK(adX.at(2, 1) == Scalar(1));
    CHECK(adX.at(1, 2) == Scalar(-1));
    CHECK(adX.at(0, 0) == Scalar(0));
}
