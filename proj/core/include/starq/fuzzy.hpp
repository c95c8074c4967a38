#pragma once

#include "starq/matrix.hpp"
#include "starq/orbit.hpp"

#include <optional>

namespace starq {

/// Spin-j irreducible representation of the h-scaled su(2): exact
/// Gaussian-rational matrices satisfying [rho(X), rho(Y)] = h rho(Z) and
/// cyclic permutations.
struct Irrep {
    int twoj = 0;
    Scalar h;
    std::vector<ScalarMatrix> rho; // images of X, Y, Z
    int dim() const { return twoj + 1; }
};

/// Ladder-basis construction: integer raising/lowering matrices recombined
/// with the imaginary unit.  Requires 2j >= 0 and h != 0.
Irrep build_irrep(int twoj, const Scalar& h);

/// Bracket relations and Schur scalarity of rho(P), checked entry-wise.
Report verify_irrep(const Irrep& R);

/// The scalar lambda with rho(P) = lambda Id; throws when rho(P) is not a
/// scalar matrix.
Scalar casimir_eigenvalue(const Irrep& R);

/// Word-by-word evaluation of a PBW element, h substituted by the irrep's
/// numeric value.  Coefficients must become constants after substitution.
ScalarMatrix represent_raw(const EnvElem& a, const Irrep& R);

/// Evaluation of a quotient class.  Rejects the call when the orbit's c(h)
/// at the irrep's h differs from the Casimir eigenvalue (descent failure).
ScalarMatrix represent(const QuotientElement& a, const OrbitData& O, const Irrep& R);

/// Exact rank of the span of the represented B1 monomials X^m Y^n Z^nu
/// (nu <= 1) up to the degree cap, inside the full matrix algebra.
int image_dimension(const Irrep& R, int degree_cap);

/// Radius r solving c(h) = lambda over the Gaussian rationals for the
/// given level family, when such an r exists.
std::optional<Scalar> radius_for(const Irrep& R, LevelKind kind);

} // namespace starq
