#pragma once

#include "starq/star.hpp"
#include "starq/uea.hpp"
#include "starq/weyl.hpp"

#include <utility>
#include <vector>

namespace starq {

enum class LevelKind { plain, shifted };

/// c(h) for a given radius polynomial: r^2 (plain) or r(r+h) (shifted).
/// Either way c(0) = r^2.
Polynomial deformed_level(LevelKind kind, const Polynomial& radius);

/// Data of a quantized su(2) coadjoint orbit: the invariant p = x^2+y^2+z^2,
/// the classical level c0 and the deformed level c(h).
struct OrbitData {
    LieAlgebra L;
    VarSetPtr vars;
    Polynomial p;
    Polynomial c0;       // classical level, h-free
    Polynomial ch;       // deformed level, c(0) == c0
    int z_var;           // division variable for the B-basis split

    static OrbitData su2(const VarSetPtr& vars, const Polynomial& radius, LevelKind kind);
    /// Arbitrary deformed level; c(0) == c0 is enforced.
    static OrbitData su2_custom(const VarSetPtr& vars, Polynomial c0, Polynomial ch);

    /// Casimir image W(p) = X^2 + Y^2 + Z^2.
    EnvElem casimir() const;
    Report validate(int degree = 3) const;
};

/// Exact split f = quot * (p - c0) + rem with z-degree(rem) <= 1, i.e. the
/// decomposition over the basis B0 u B1.
DivModResult b_decompose(const Polynomial& f, const OrbitData& O);

/// psi(x^m y^n z^q (p - r^2)) = X^m Y^n Z^q (P - c(h)),
/// psi(x^m y^n z^nu)           = X^m Y^n Z^nu  (nu in {0,1}),
/// extended linearly via the B-basis split.
EnvElem psi_su2(const Polynomial& f, const OrbitData& O, const WeylContext& ctx);

/// Kostant split f = sum_r p^r f_r with every f_r harmonic (Delta f_r = 0).
/// Returned pairs are (r, f_r) with f_r nonzero, increasing in r.
std::vector<std::pair<int, Polynomial>> harmonic_decompose(const Polynomial& f,
                                                           const LieAlgebra& L);

/// The harmonic-decomposition isomorphism psi_P:
/// (p - c0)^q g  ->  (P - c(h))^q W(g) for harmonic g.
EnvElem psi_P(const Polynomial& f, const OrbitData& O, const WeylContext& ctx);
Polynomial psi_P_inv(const EnvElem& a, const OrbitData& O, const WeylContext& ctx);

/// Transport of the U_h product through psi_P; tangential by construction,
/// with p acting by plain multiplication.
Polynomial star_P(const Polynomial& f, const Polynomial& g, const OrbitData& O,
                  const WeylContext& ctx);
StarProduct make_star_P(std::shared_ptr<const OrbitData> O,
                        std::shared_ptr<const WeylContext> ctx);

/// Class in U_h/(P - c(h)) in reduced form (Z-degree <= 1).
struct QuotientElement {
    EnvElem rep;
    bool operator==(const QuotientElement& o) const { return rep == o.rep; }
};

QuotientElement orbit_class(const EnvElem& a, const OrbitData& O);
QuotientElement orbit_class(const Polynomial& f, const OrbitData& O, const WeylContext& ctx);

/// Product on the quotient: multiply in U_h, then reduce mod (P - c(h)).
QuotientElement star_PTheta(const QuotientElement& a, const QuotientElement& b,
                            const OrbitData& O);

} // namespace starq
