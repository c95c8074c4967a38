#include "starq/fuzzy.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

Irrep build_irrep(int twoj, const Scalar& h) {
    if (twoj < 0) throw std::invalid_argument("build_irrep: 2j must be a non-negative integer");
    if (h.is_zero()) throw std::invalid_argument("build_irrep: h must be nonzero");
    const int N = twoj + 1;
    // Integer ladder matrices: E v_k = k(N-k) v_{k-1}, F v_k = v_{k+1},
    // H v_k = (N-1-2k) v_k.
    ScalarMatrix E(N, N), F(N, N), H(N, N);
    for (int k = 1; k < N; ++k) E.at(k - 1, k) = Scalar(k * (N - k));
    for (int k = 0; k + 1 < N; ++k) F.at(k + 1, k) = Scalar(1);
    for (int k = 0; k < N; ++k) H.at(k, k) = Scalar(N - 1 - 2 * k);

    // X = -(i/2)(E+F), Y = (1/2)(F-E), Z = -(i/2)H, then scaled by h.
    Scalar mi2 = -(Scalar::i() * Scalar::ratio(1, 2));
    ScalarMatrix X = (E + F).scale(mi2 * h);
    ScalarMatrix Y = (F - E).scale(Scalar::ratio(1, 2) * h);
    ScalarMatrix Z = H.scale(mi2 * h);
    Irrep R{twoj, h, {std::move(X), std::move(Y), std::move(Z)}};
    Report check = verify_irrep(R);
    if (!check.pass)
        throw std::logic_error("build_irrep: construction violates invariants: " +
                               check.witnesses.front());
    return R;
}

Report verify_irrep(const Irrep& R) {
    Report rep;
    rep.summary = "irrep invariants (2j=" + std::to_string(R.twoj) + ", h=" + R.h.str() + ")";
    const auto& X = R.rho[0];
    const auto& Y = R.rho[1];
    const auto& Z = R.rho[2];
    auto comm = [](const ScalarMatrix& a, const ScalarMatrix& b) { return a * b - b * a; };
    if (!(comm(X, Y) == Z.scale(R.h))) {
        rep.fail("[X,Y] != h Z");
        return rep;
    }
    if (!(comm(Y, Z) == X.scale(R.h))) {
        rep.fail("[Y,Z] != h X");
        return rep;
    }
    if (!(comm(Z, X) == Y.scale(R.h))) {
        rep.fail("[Z,X] != h Y");
        return rep;
    }
    ScalarMatrix P = X * X + Y * Y + Z * Z;
    Scalar lambda;
    if (!P.is_scalar_matrix(lambda)) {
        rep.fail("rho(P) is not a scalar matrix");
        return rep;
    }
    return rep;
}

Scalar casimir_eigenvalue(const Irrep& R) {
    ScalarMatrix P = R.rho[0] * R.rho[0] + R.rho[1] * R.rho[1] + R.rho[2] * R.rho[2];
    Scalar lambda;
    if (!P.is_scalar_matrix(lambda))
        throw std::logic_error("casimir_eigenvalue: rho(P) is not scalar (invariant breach)");
    return lambda;
}

ScalarMatrix represent_raw(const EnvElem& a, const Irrep& R) {
    const int N = R.dim();
    const auto& vars = a.vars();
    int h = vars->h_index();
    Polynomial hval = Polynomial::constant(vars, R.h);
    ScalarMatrix out(N, N);
    for (const auto& [w, c] : a.terms()) {
        Polynomial cv = c.substitute(h, hval);
        if (!cv.is_constant())
            throw std::invalid_argument(
                "represent: coefficient not numeric after h substitution: " + c.str());
        ScalarMatrix m = ScalarMatrix::identity(N);
        for (int g : w) m = m * R.rho[static_cast<size_t>(g)];
        out = out + m.scale(cv.constant_value());
    }
    return out;
}

ScalarMatrix represent(const QuotientElement& a, const OrbitData& O, const Irrep& R) {
    int h = O.vars->h_index();
    Polynomial level = O.ch.substitute(h, Polynomial::constant(O.vars, R.h));
    if (!level.is_constant() || !(level.constant_value() == casimir_eigenvalue(R)))
        throw std::invalid_argument(
            "represent: quotient level c(h) does not match the Casimir eigenvalue "
            "(representation does not descend)");
    return represent_raw(a.rep, R);
}

int image_dimension(const Irrep& R, int degree_cap) {
    const int N = R.dim();
    std::vector<std::vector<Scalar>> rows;
    for (int m = 0; m <= degree_cap; ++m)
        for (int n = 0; m + n <= degree_cap; ++n)
            for (int nu = 0; nu <= 1 && m + n + nu <= degree_cap; ++nu) {
                ScalarMatrix mat = ScalarMatrix::identity(N);
                for (int t = 0; t < m; ++t) mat = mat * R.rho[0];
                for (int t = 0; t < n; ++t) mat = mat * R.rho[1];
                for (int t = 0; t < nu; ++t) mat = mat * R.rho[2];
                std::vector<Scalar> row;
                row.reserve(static_cast<size_t>(N) * N);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j) row.push_back(mat.at(i, j));
                rows.push_back(std::move(row));
            }
    ScalarMatrix span(static_cast<int>(rows.size()), N * N);
    for (int i = 0; i < span.rows(); ++i)
        for (int j = 0; j < span.cols(); ++j)
            span.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return span.rank();
}

std::optional<Scalar> radius_for(const Irrep& R, LevelKind kind) {
    Scalar lambda = casimir_eigenvalue(R);
    // plain: r^2 = lambda; shifted: r^2 + r h = lambda.  The eigenvalue is
    // real, so solutions are found by rational square roots, allowing a
    // purely imaginary r for negative radicands.
    auto sqrt_scalar = [](const Scalar& s) -> std::optional<Scalar> {
        if (!s.is_real()) return std::nullopt;
        BigRat root;
        if (rational_sqrt(s.re(), root)) return Scalar(root);
        if (rational_sqrt(-s.re(), root)) return Scalar(BigRat(0), root);
        return std::nullopt;
    };
    if (!R.h.is_real()) return std::nullopt;
    if (kind == LevelKind::plain) return sqrt_scalar(lambda);
    // r = (-h + sqrt(h^2 + 4 lambda)) / 2
    Scalar disc = R.h * R.h + Scalar(4) * lambda;
    auto root = sqrt_scalar(disc);
    if (!root) return std::nullopt;
    return (*root - R.h) * Scalar::ratio(1, 2);
}

} // namespace starq
