#pragma once

#include "starq/liealg.hpp"
#include "starq/uea.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace starq {

/// Symmetrization (Weyl) map between polynomials on the dual and the
/// h-scaled enveloping algebra.  Symmetrized monomials are computed by
/// coefficient extraction from cached powers of the generic element
/// Xi = sum_i t_i X_i (the t_i live in an internal extension of the user
/// context), which avoids the factorial permutation sum.
///
/// The caches are guarded by a mutex: concurrent readers see values as if
/// computed once.
class WeylContext {
public:
    WeylContext(LieAlgebra L, VarSetPtr vars);

    const LieAlgebra& algebra() const { return L_; }
    const VarSetPtr& vars() const { return uvars_; }

    /// W(f): linear extension of monomial symmetrization, in PBW normal form.
    EnvElem sym(const Polynomial& f) const;

    /// W^{-1}(a) by downward induction on word length; a is normalized first.
    Polynomial inv(const EnvElem& a) const;

    /// Verifies W(Abar(m)) == Atilde(W(m)) for all coordinate monomials m up
    /// to the given degree, where D is a derivation matrix of the algebra
    /// (D X_i = sum_l D_li X_l).  Non-derivations are rejected with a
    /// witness pair.
    Report check_intertwining(const ScalarMatrix& D, int degree) const;

    /// Nonempty description of the first bracket pair violating the
    /// derivation property, if any.
    std::optional<std::string> derivation_violation(const ScalarMatrix& D) const;

    /// Derivation of the polynomial algebra induced by D.
    Polynomial apply_poly_derivation(const ScalarMatrix& D, const Polynomial& f) const;
    /// Derivation of U_h induced by D (Leibniz over word positions).
    EnvElem apply_ue_derivation(const ScalarMatrix& D, const EnvElem& a) const;

private:
    const EnvElem& xi_power(int p) const;
    EnvElem sym_monomial(const std::vector<int>& alpha) const;

    LieAlgebra L_;
    VarSetPtr uvars_;
    VarSetPtr evars_;
    std::vector<int> coord_idx_; // coordinate index in uvars_ per generator
    std::vector<int> t_idx_;     // t_i index in evars_ per generator

    mutable std::mutex mu_;
    mutable std::vector<EnvElem> xi_pow_;
    mutable std::map<std::vector<int>, EnvElem> sym_cache_;
};

} // namespace starq
