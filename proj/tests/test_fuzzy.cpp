#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "starq/fuzzy.hpp"

using namespace starq;
using tutil::P;

namespace {

// c(h) = lambda_j h^2 with lambda_j the exactly computed Casimir value; the
// unique h-quadratic level that matches every numeric h at once.
OrbitData descent_orbit(const VarSetPtr& vars, int twoj) {
    Scalar lam_unit = casimir_eigenvalue(build_irrep(twoj, Scalar(1)));
    Polynomial ch(vars);
    ch.add_term(Monomial::of_var(*vars, vars->h_index(), 2), lam_unit);
    return OrbitData::su2_custom(vars, Polynomial::zero(vars), ch);
}

} // namespace

TEST_CASE("trivial representation") {
    Irrep R = build_irrep(0, Scalar(1));
    CHECK(R.dim() == 1);
    CHECK(R.rho[0].is_zero());
    CHECK(R.rho[1].is_zero());
    CHECK(R.rho[2].is_zero());
    CHECK(casimir_eigenvalue(R) == Scalar(0));
    CHECK(image_dimension(R, 2) == 1);
}

TEST_CASE("bracket relations hold exactly for 2j <= 5") {
    for (int twoj = 0; twoj <= 5; ++twoj)
        for (const auto& h : {Scalar(1), Scalar::ratio(1, 2), Scalar(3)}) {
            Irrep R = build_irrep(twoj, h);
            CHECK(verify_irrep(R).pass);
        }
    CHECK_THROWS_AS(build_irrep(-1, Scalar(1)), std::invalid_argument);
    CHECK_THROWS_AS(build_irrep(1, Scalar(0)), std::invalid_argument);
}

TEST_CASE("Casimir eigenvalue: exact scalar matrix, frozen values") {
    // j = 1/2, h = 1: rho(P) = -3/4 Id by direct 2x2 arithmetic.
    Irrep R = build_irrep(1, Scalar(1));
    Scalar lam = casimir_eigenvalue(R);
    CHECK(lam == Scalar::ratio(-3, 4));
    ScalarMatrix P2 = R.rho[0] * R.rho[0] + R.rho[1] * R.rho[1] + R.rho[2] * R.rho[2];
    CHECK((P2 - ScalarMatrix::identity(2).scale(lam)).is_zero());

    // j = 1, h = 1/2: brackets exact, eigenvalue -j(j+1)h^2 = -1/2.
    Irrep R2 = build_irrep(2, Scalar::ratio(1, 2));
    CHECK(verify_irrep(R2).pass);
    CHECK(casimir_eigenvalue(R2) == Scalar::ratio(-1, 2));
}

TEST_CASE("Casimir eigenvalue scales as h^2") {
    for (int twoj : {1, 2, 3}) {
        Scalar l1 = casimir_eigenvalue(build_irrep(twoj, Scalar(1)));
        Scalar l2 = casimir_eigenvalue(build_irrep(twoj, Scalar(2)));
        CHECK(l2 == l1 * Scalar(4));
    }
}

TEST_CASE("represent annihilates P - lambda and sends 1 to the identity") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars();
    WeylContext ctx(su2, vars);
    for (int twoj : {1, 2, 3})
        for (const auto& h : {Scalar(1), Scalar::ratio(1, 2)}) {
            Irrep R = build_irrep(twoj, h);
            OrbitData O = descent_orbit(vars, twoj);
            // the class of P - c(h) is zero, and its raw preimage maps to zero
            EnvElem pc = ctx.sym(O.p);
            pc.add_term(Word{}, -O.ch);
            CHECK(represent_raw(pc, R).is_zero());
            QuotientElement one = orbit_class(Polynomial::one(vars), O, ctx);
            CHECK(represent(one, O, R) == ScalarMatrix::identity(R.dim()));
        }
}

TEST_CASE("descent is rejected when c(h) misses the eigenvalue") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars();
    WeylContext ctx(su2, vars);
    Irrep R = build_irrep(1, Scalar(1));
    // plain level c(h) = 1: c(1) = 1 != -3/4
    OrbitData bad = OrbitData::su2(vars, Polynomial::one(vars), LevelKind::plain);
    QuotientElement one = orbit_class(Polynomial::one(vars), bad, ctx);
    CHECK_THROWS_AS(represent(one, bad, R), std::invalid_argument);
}

TEST_CASE("represent is a homomorphism on exhaustive low-degree classes") {
    auto su2 = LieAlgebra::su2();
    auto vars = su2.dual_vars();
    WeylContext ctx(su2, vars);
    for (int twoj : {1, 2, 3}) {
        Irrep R = build_irrep(twoj, Scalar(1));
        OrbitData O = descent_orbit(vars, twoj);
        std::vector<QuotientElement> classes;
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; m + n <= 2; ++n)
                for (int nu = 0; nu <= 1 && m + n + nu <= 2; ++nu) {
                    Word w;
                    for (int t = 0; t < m; ++t) w.push_back(0);
                    for (int t = 0; t < n; ++t) w.push_back(1);
                    for (int t = 0; t < nu; ++t) w.push_back(2);
                    classes.push_back(orbit_class(EnvElem::word(vars, w), O));
                }
        for (const auto& a : classes)
            for (const auto& b : classes) {
                ScalarMatrix lhs = represent(star_PTheta(a, b, O), O, R);
                ScalarMatrix rhs = represent(a, O, R) * represent(b, O, R);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("image dimension saturates at (2j+1)^2") {
    CHECK(image_dimension(build_irrep(1, Scalar(1)), 1) == 4);
    CHECK(image_dimension(build_irrep(2, Scalar(1)), 2) == 9);
    CHECK(image_dimension(build_irrep(3, Scalar::ratio(1, 2)), 3) == 16);
    // saturation: no growth past degree 2j
    CHECK(image_dimension(build_irrep(2, Scalar(1)), 4) == 9);
    // under-capped spans are smaller
    CHECK(image_dimension(build_irrep(2, Scalar(1)), 1) == 4);
}

TEST_CASE("no Gaussian-rational radius exists for the tested spins") {
    for (int twoj : {1, 2, 3})
        for (auto kind : {LevelKind::plain, LevelKind::shifted}) {
            auto r = radius_for(build_irrep(twoj, Scalar(1)), kind);
            CHECK_FALSE(r);
        }
    // j = 0 solves trivially with r = 0
    auto r0 = radius_for(build_irrep(0, Scalar(1)), LevelKind::plain);
    REQUIRE(r0);
    CHECK(*r0 == Scalar(0));
}

TEST_CASE("matrix text format is plain row-major") {
    Irrep R = build_irrep(1, Scalar(1));
    std::string s = R.rho[2].str();
    CHECK(s == "-1/2i 0\n0 1/2i\n");
}
