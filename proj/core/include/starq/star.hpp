#pragma once

#include "starq/liealg.hpp"
#include "starq/report.hpp"
#include "starq/weyl.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace starq {

/// Constant antisymmetric Poisson matrix on R^{2n} coordinates.
struct PoissonMatrix {
    ScalarMatrix m;
    explicit PoissonMatrix(ScalarMatrix mat);
    static PoissonMatrix standard_symplectic(int n_coords);
    int dim() const { return m.rows(); }
};

/// A named bilinear product on polynomials.  Evaluation must be bilinear
/// with the unit acting as identity.
struct StarProduct {
    std::string name;
    std::function<Polynomial(const Polynomial&, const Polynomial&)> apply;
    Polynomial operator()(const Polynomial& f, const Polynomial& g) const { return apply(f, g); }
};

/// f * g = W^{-1}(W(f) W(g)); exact, terminates on polynomials.
Polynomial star_S(const Polynomial& f, const Polynomial& g, const WeylContext& ctx);
StarProduct make_star_weyl(std::shared_ptr<const WeylContext> ctx);

/// Closed exponential form on the Heisenberg dual (q, p, e'):
/// sum_k (1/k!) ((h/2) e')^k P^k(f, g).  Finite on polynomials; optional jet
/// truncation at order K.
Polynomial moyal_heisenberg(const Polynomial& f, const Polynomial& g,
                            std::optional<int> K = std::nullopt);
StarProduct make_star_moyal_heisenberg(std::optional<int> K = std::nullopt);

/// Constant-coefficient Moyal-Weyl product for an antisymmetric matrix P.
Polynomial moyal_r2n(const Polynomial& f, const Polynomial& g, const PoissonMatrix& P);
StarProduct make_star_moyal_r2n(PoissonMatrix P, std::optional<int> K = std::nullopt);

/// Verifies, on all coordinate monomial pairs up to the degree bound, that
/// (1) f*g at h=0 is the pointwise product and (2) (f*g - g*f)/h at h=0 is
/// the Kirillov bracket.
Report check_semiclassical(const StarProduct& S, const LieAlgebra& L, const VarSetPtr& vars,
                           int degree);

struct TangentialWitness {
    int generator;      // index into the generator list
    std::string side;   // "left" or "right"
    Polynomial monomial;
    int h_order;
    Polynomial remainder;
};

struct TangentialReport {
    bool pass = true;
    std::string summary;
    std::vector<TangentialWitness> witnesses;
};

/// Tests whether g * f and f * g stay in the polynomial ideal generated by
/// each generator, per h-order.  Ideal membership is decided by exact
/// division against a variable in which the generator is monic.
TangentialReport check_tangential(const StarProduct& S,
                                  const std::vector<Polynomial>& generators, int degree,
                                  int h_order);

/// The variable in which g is monic with a pure-power leading term,
/// preferring the latest declared coordinate.  nullopt when no variable
/// qualifies.
std::optional<int> division_variable(const Polynomial& g);

} // namespace starq
