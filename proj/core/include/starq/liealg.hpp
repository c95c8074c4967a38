#pragma once

#include "starq/matrix.hpp"
#include "starq/poly.hpp"
#include "starq/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starq {

/// Finite-dimensional Lie algebra given by structure constants c_ij^k
/// (the coefficient of X_k in [X_i, X_j]).  Immutable after construction.
class LieAlgebra {
public:
    static LieAlgebra heisenberg();
    static LieAlgebra su2();
    static LieAlgebra sl2();
    static std::optional<LieAlgebra> builtin(const std::string& name);

    /// Structure constants are stored as given; call validate() to check
    /// antisymmetry and the Jacobi identity.
    static LieAlgebra from_structure(std::string name, std::vector<std::string> basis,
                                     std::vector<std::string> coords,
                                     std::vector<Scalar> c_tensor);

    const std::string& name() const { return name_; }
    int dim() const { return n_; }
    const std::vector<std::string>& basis() const { return basis_; }
    const std::vector<std::string>& coords() const { return coords_; }

    const Scalar& c(int i, int j, int k) const {
        return c_[static_cast<size_t>((i * n_ + j) * n_ + k)];
    }

    /// Dual-space variable context: coordinates, h, then extra parameters.
    VarSetPtr dual_vars(std::vector<std::string> params = {}) const;

    /// [X_i, X_j] as a linear polynomial in the dual coordinates.
    Polynomial bracket_basis(const VarSetPtr& vars, int i, int j) const;

    Report validate() const;

    /// Kirillov Poisson bracket sum c_ij^k xi_k d_i(f) d_j(g).  The context of
    /// f and g must contain every dual coordinate (matched by name).
    Polynomial kirillov(const Polynomial& f, const Polynomial& g) const;

    /// Checks antisymmetry, Leibniz and Jacobi for the Kirillov bracket on
    /// all coordinate monomials up to the given degree.
    Report poisson_properties(int degree) const;

    /// Matrix of the inner derivation ad_{X_k} in the chosen basis.
    ScalarMatrix ad_matrix(int k) const;

private:
    LieAlgebra() = default;
    std::string name_;
    int n_ = 0;
    std::vector<std::string> basis_;
    std::vector<std::string> coords_;
    std::vector<Scalar> c_;
};

/// Heisenberg group element (a, b, c) with the polarized composition law.
struct HeisenbergElement {
    Scalar a, b, c;
    HeisenbergElement compose(const HeisenbergElement& o) const {
        return {a + o.a, b + o.b, c + o.c + a * o.b};
    }
    bool operator==(const HeisenbergElement& o) const = default;
};

/// Coadjoint action matrix on the dual basis (q, p, e').
ScalarMatrix heisenberg_coadjoint(const HeisenbergElement& g);

} // namespace starq
