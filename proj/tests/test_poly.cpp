#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "starq/poly.hpp"

using namespace starq;
using tutil::P;
using tutil::random_poly;

TEST_CASE("scalar arithmetic is exact and canonical") {
    Scalar a = Scalar::ratio(2, 4);
    CHECK(a == Scalar::ratio(1, 2));
    CHECK(a.str() == "1/2");
    CHECK((Scalar::ratio(-3, -6)).str() == "1/2");
    CHECK((Scalar::ratio(1, -2)).str() == "-1/2");
    CHECK(Scalar::parse("7/21") == Scalar::ratio(1, 3));
    CHECK_THROWS(Scalar::parse("1/0"));

    Scalar i = Scalar::i();
    CHECK((i * i) == Scalar(-1));
    Scalar g(BigRat(1, 2), BigRat(3, 4));
    CHECK((g * g.conj()).is_real());
    CHECK((g / g) == Scalar(1));
    CHECK(g.inverse() * g == Scalar(1));
    CHECK_THROWS(Scalar(0).inverse());
    CHECK(Scalar::ratio(-2, 3).pow(3) == Scalar::ratio(-8, 27));
    CHECK(g.str() == "1/2+3/4i");
    CHECK((-i).str() == "-i");
}

TEST_CASE("rational square roots") {
    BigRat r;
    CHECK(rational_sqrt(BigRat(9, 4), r));
    CHECK(r == BigRat(3, 2));
    CHECK_FALSE(rational_sqrt(BigRat(2), r));
    CHECK_FALSE(rational_sqrt(BigRat(-1), r));
}

TEST_CASE("addition examples") {
    auto vars = VarSet::make({"x", "y"});
    CHECK((P(vars, "x") + P(vars, "-x")).is_zero());
    CHECK(P(vars, "x+y") + P(vars, "y") == P(vars, "x + 2*y"));
    CHECK(P(vars, "x^2+1/2") + P(vars, "1/2") == P(vars, "x^2+1"));
}

TEST_CASE("multiplication examples") {
    auto vars = VarSet::make({"x", "y"});
    CHECK(P(vars, "x") * P(vars, "y") == P(vars, "x*y"));
    CHECK(P(vars, "x+h") * P(vars, "x-h") == P(vars, "x^2 - h^2"));
    Polynomial f = P(vars, "3*x^2*y - y + 1/2");
    CHECK(P(vars, "1") * f == f);
}

TEST_CASE("partial derivatives") {
    auto vars = VarSet::make({"q", "p"});
    int q = *vars->index_of("q");
    int p = *vars->index_of("p");
    CHECK(P(vars, "q^2*p").partial(q) == P(vars, "2*q*p"));
    CHECK(P(vars, "q").partial(p).is_zero());
    auto v3 = VarSet::make({"x", "y", "z"});
    CHECK(P(v3, "x^2+y^2+z^2").partial(*v3->index_of("x")) == P(v3, "2*x"));
}

TEST_CASE("coefficient_of") {
    auto vars = VarSet::make({"x", "y"});
    Monomial y = Monomial::of_var(*vars, *vars->index_of("y"));
    CHECK(P(vars, "x + 2*y").coefficient_of(y) == Scalar(2));
    CHECK(Polynomial::zero(vars).coefficient_of(y) == Scalar(0));
    Monomial h2 = Monomial::of_var(*vars, vars->h_index(), 2);
    CHECK(P(vars, "x^2 - h^2").coefficient_of(h2) == Scalar(-1));
}

TEST_CASE("truncate_h") {
    auto vars = VarSet::make({"x"});
    CHECK(P(vars, "1 + h + h^2").truncate_h(1) == P(vars, "1 + h"));
    Polynomial f = P(vars, "x + x*h^2");
    CHECK(f.truncate_h(2) == f);
    CHECK(P(vars, "x*h^3").truncate_h(2).is_zero());
}

TEST_CASE("ring axioms on random inputs") {
    auto vars = VarSet::make({"x", "y", "z"});
    std::mt19937 rng(20240811);
    for (int rep = 0; rep < 30; ++rep) {
        Polynomial f = random_poly(rng, vars, 4, 4, true);
        Polynomial g = random_poly(rng, vars, 4, 4, true);
        Polynomial k = random_poly(rng, vars, 4, 4, true);
        CHECK((f + g) + k == f + (g + k));
        CHECK(f + g == g + f);
        CHECK((f * g) * k == f * (g * k));
        CHECK(f * g == g * f);
        CHECK(f * (g + k) == f * g + f * k);
    }
}

TEST_CASE("Leibniz rule on random inputs up to degree 6") {
    auto vars = VarSet::make({"x", "y", "z"});
    std::mt19937 rng(77);
    for (int rep = 0; rep < 25; ++rep) {
        Polynomial f = random_poly(rng, vars, 6, 4);
        Polynomial g = random_poly(rng, vars, 6, 4);
        for (int v = 0; v < vars->n_coords(); ++v)
            CHECK((f * g).partial(v) == f.partial(v) * g + f * g.partial(v));
    }
}

TEST_CASE("truncate_h is a jet-ring homomorphism") {
    auto vars = VarSet::make({"x", "y"});
    std::mt19937 rng(99);
    for (int rep = 0; rep < 25; ++rep) {
        Polynomial f = random_poly(rng, vars, 3, 4, true);
        Polynomial g = random_poly(rng, vars, 3, 4, true);
        for (int K = 0; K <= 3; ++K)
            CHECK((f * g).truncate_h(K) ==
                  (f.truncate_h(K) * g.truncate_h(K)).truncate_h(K));
    }
}

TEST_CASE("degree of a product adds") {
    auto vars = VarSet::make({"x", "y"});
    std::mt19937 rng(5);
    for (int rep = 0; rep < 25; ++rep) {
        Polynomial f = random_poly(rng, vars, 3, 3);
        Polynomial g = random_poly(rng, vars, 3, 3);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK((f * g).total_degree() == f.total_degree() + g.total_degree());
    }
}

TEST_CASE("canonical printing and ordering") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars();
    CHECK(P(vars, "x*y + 1/2*h*z").str() == "x*y + (1/2)*h*z");
    CHECK(P(vars, "z^2+y^2+x^2").str() == "x^2 + y^2 + z^2");
    CHECK(P(vars, "y - x").str() == "-x + y");
    CHECK(Polynomial::zero(vars).str() == "0");
    CHECK(P(vars, "2*x - 3").str() == "2*x - 3");
    auto withr = su2.dual_vars({"r"});
    CHECK(P(withr, "h^2*r^2*x - x").str() == "h^2*r^2*x - x");
}

TEST_CASE("context mismatch is a usage error") {
    auto a = VarSet::make({"x", "y"});
    auto b = VarSet::make({"x", "z"});
    CHECK_THROWS_AS(P(a, "x") + P(b, "x"), std::invalid_argument);
    CHECK_THROWS_AS(P(a, "x") * P(b, "x"), std::invalid_argument);
}

TEST_CASE("substitution and transport") {
    auto heis = LieAlgebra::heisenberg();
    auto vars = heis.dual_vars();
    Polynomial f = P(vars, "q*p*e' + e'^2*h");
    Polynomial g = f.substitute(*vars->index_of("e'"), Polynomial::one(vars));
    CHECK(g == P(vars, "q*p + h"));
    auto qp = VarSet::make({"q", "p"});
    CHECK(g.transport(qp) == P(qp, "q*p + h"));
    CHECK_THROWS_AS(f.transport(qp), std::invalid_argument);
}

TEST_CASE("monic-variable division") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars({"r"});
    int z = *vars->index_of("z");
    Polynomial g = P(vars, "x^2+y^2+z^2-r^2");
    Polynomial f = P(vars, "z^4 + x*z^2 + y");
    auto dm = divmod_in_var(f, g, z);
    CHECK(dm.rem.degree_in(z) <= 1);
    CHECK(dm.quot * g + dm.rem == f);
    // divisor must be monic in the chosen variable
    CHECK_THROWS_AS(divmod_in_var(f, P(vars, "x*z^2 + y"), z), std::domain_error);
}

TEST_CASE("exact division") {
    auto vars = VarSet::make({"x", "y"});
    CHECK(exact_divide(P(vars, "x^2 - h^2"), P(vars, "x - h")) == P(vars, "x + h"));
    CHECK_THROWS_AS(exact_divide(P(vars, "x^2 + 1"), P(vars, "x - h")), std::domain_error);
    std::mt19937 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        Polynomial f = random_poly(rng, vars, 3, 3, true);
        Polynomial g = random_poly(rng, vars, 3, 3, true);
        if (g.is_zero()) continue;
        CHECK(exact_divide(f * g, g) == f);
    }
}

TEST_CASE("divide_by_h") {
    auto vars = VarSet::make({"x"});
    CHECK(divide_by_h(P(vars, "h*x + h^2")) == P(vars, "x + h"));
    CHECK_THROWS_AS(divide_by_h(P(vars, "x + h")), std::domain_error);
}

TEST_CASE("coordinate monomial enumeration") {
    auto vars = VarSet::make({"x", "y", "z"});
    auto monos = coordinate_monomials(*vars, 3);
    CHECK(monos.size() == 20); // C(3+3,3)
    for (size_t k = 1; k < monos.size(); ++k) CHECK(monos[k - 1].less(monos[k]));
}
