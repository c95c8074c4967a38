#include "starq/orbit.hpp"

#include "starq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

Polynomial deformed_level(LevelKind kind, const Polynomial& radius) {
    Polynomial c0 = radius * radius;
    if (kind == LevelKind::plain) return c0;
    int h = radius.vars()->h_index();
    return c0 + radius.times_var(h);
}

namespace {

Polynomial su2_invariant(const VarSetPtr& vars, const LieAlgebra& L) {
    Polynomial p(vars);
    for (const auto& c : L.coords()) {
        auto idx = vars->index_of(c);
        if (!idx) throw std::invalid_argument("OrbitData: coordinate '" + c + "' missing");
        p.add_term(Monomial::of_var(*vars, *idx, 2), Scalar(1));
    }
    return p;
}

} // namespace

OrbitData OrbitData::su2(const VarSetPtr& vars, const Polynomial& radius, LevelKind kind) {
    return su2_custom(vars, radius * radius, deformed_level(kind, radius));
}

OrbitData OrbitData::su2_custom(const VarSetPtr& vars, Polynomial c0, Polynomial ch) {
    LieAlgebra L = LieAlgebra::su2();
    int h = vars->h_index();
    if (c0.degree_in(h) > 0) throw std::invalid_argument("OrbitData: c0 must be h-free");
    if (!(ch.substitute(h, Polynomial::zero(vars)) == c0))
        throw std::invalid_argument("OrbitData: c(0) != c0");
    for (int v = 0; v < vars->n_coords(); ++v)
        if (c0.degree_in(v) > 0 || ch.degree_in(v) > 0)
            throw std::invalid_argument("OrbitData: level must not involve coordinates");
    OrbitData O{L, vars, su2_invariant(vars, L), std::move(c0), std::move(ch), 0};
    O.z_var = *vars->index_of(L.coords().back());
    return O;
}

EnvElem OrbitData::casimir() const {
    EnvElem c(vars);
    for (int i = 0; i < L.dim(); ++i) c.add_term(Word{i, i}, Polynomial::one(vars));
    return c;
}

Report OrbitData::validate(int degree) const {
    Report rep;
    rep.summary = "orbit data invariants";
    int h = vars->h_index();
    if (!(ch.substitute(h, Polynomial::zero(vars)) == c0)) {
        rep.fail("c(0) != c0");
        return rep;
    }
    for (const auto& m : coordinate_monomials(*vars, degree)) {
        Polynomial f = Polynomial::monomial(vars, m, Scalar(1));
        if (!L.kirillov(p, f).is_zero()) {
            rep.fail("p is not invariant: {p, " + f.str() + "} != 0");
            return rep;
        }
    }
    return rep;
}

DivModResult b_decompose(const Polynomial& f, const OrbitData& O) {
    return divmod_in_var(f, O.p - O.c0, O.z_var);
}

EnvElem psi_su2(const Polynomial& f, const OrbitData& O, const WeylContext& ctx) {
    if (!same_context(f.vars(), O.vars))
        throw std::invalid_argument("psi_su2: mismatched variable contexts");
    auto split = b_decompose(f, O);
    // P - c(h), with P realized through the Weyl map of the invariant.
    EnvElem pc = ctx.sym(O.p);
    pc.add_term(Word{}, -O.ch);
    EnvElem out = ue_mul(standard_order(split.quot, O.L), pc, O.L);
    out += standard_order(split.rem, O.L);
    return out;
}

std::vector<std::pair<int, Polynomial>> harmonic_decompose(const Polynomial& f,
                                                           const LieAlgebra& L) {
    if (L.dim() != 3)
        throw std::invalid_argument("harmonic_decompose: only the su2 dual is supported");
    const LieAlgebra ref = LieAlgebra::su2();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (!(L.c(i, j, k) == ref.c(i, j, k)))
                    throw std::invalid_argument(
                        "harmonic_decompose: only the su2 dual is supported");
    const auto& vars = f.vars();
    std::vector<int> ci;
    for (const auto& c : L.coords()) {
        auto idx = vars->index_of(c);
        if (!idx) throw std::invalid_argument("harmonic_decompose: coordinate missing");
        ci.push_back(*idx);
    }
    Polynomial p(vars);
    for (int v : ci) p.add_term(Monomial::of_var(*vars, v, 2), Scalar(1));
    auto laplacian = [&](const Polynomial& u) {
        Polynomial out(vars);
        for (int v : ci) out += u.partial(v).partial(v);
        return out;
    };

    std::map<int, Polynomial> acc;
    // Split into homogeneous coordinate-degree slices and peel p-factors off
    // each slice: F = H + p G with H harmonic, G of degree d-2.
    struct Piece {
        int power;
        Polynomial part;
    };
    std::vector<Piece> work;
    int maxd = f.coordinate_degree();
    for (int d = 0; d <= std::max(maxd, 0); ++d) {
        Polynomial slice(vars);
        for (const auto& [m, c] : f.terms()) {
            int cd = 0;
            for (int v : ci) cd += m.deg(v);
            if (cd == d) slice.add_term(m, c);
        }
        if (!slice.is_zero()) work.push_back({0, slice});
    }
    while (!work.empty()) {
        Piece piece = std::move(work.back());
        work.pop_back();
        const Polynomial& F = piece.part;
        int d = F.coordinate_degree();
        if (d <= 1) {
            auto [it, ok] = acc.emplace(piece.power, F);
            if (!ok) it->second += F;
            continue;
        }
        // Solve Delta(p G) = Delta(F) on the degree d-2 slice.
        auto basis = coordinate_monomials(*vars, d - 2);
        std::vector<Monomial> hom;
        for (const auto& m : basis)
            if (m.degree() == d - 2) hom.push_back(m);
        int n = static_cast<int>(hom.size());
        std::map<Monomial, int, MonomialLess> row_of;
        for (int k = 0; k < n; ++k) row_of.emplace(hom[static_cast<size_t>(k)], k);
        ScalarMatrix A(n, n);
        for (int cidx = 0; cidx < n; ++cidx) {
            Polynomial img = laplacian(
                p * Polynomial::monomial(vars, hom[static_cast<size_t>(cidx)], Scalar(1)));
            for (const auto& [m, s] : img.terms()) {
                Monomial key(vars->size());
                for (int v : ci) key.set(v, m.deg(v));
                A.at(row_of.at(key), cidx) += s;
            }
        }
        std::vector<Polynomial> b(static_cast<size_t>(n), Polynomial::zero(vars));
        Polynomial lapF = laplacian(F);
        for (const auto& [m, s] : lapF.terms()) {
            Monomial key(vars->size());
            Monomial rest = m;
            for (int v : ci) {
                key.set(v, m.deg(v));
                rest.set(v, 0);
            }
            b[static_cast<size_t>(row_of.at(key))].add_term(rest, s);
        }
        std::vector<Polynomial> gcoef = solve_scalar_system(std::move(A), std::move(b));
        Polynomial G(vars);
        for (int k = 0; k < n; ++k)
            G += Polynomial::monomial(vars, hom[static_cast<size_t>(k)], Scalar(1)) *
                 gcoef[static_cast<size_t>(k)];
        Polynomial H = F - p * G;
        if (!laplacian(H).is_zero())
            throw std::logic_error("harmonic_decompose: residual is not harmonic");
        if (!H.is_zero()) {
            auto [it, ok] = acc.emplace(piece.power, H);
            if (!ok) it->second += H;
        }
        if (!G.is_zero()) work.push_back({piece.power + 1, std::move(G)});
    }
    std::vector<std::pair<int, Polynomial>> out;
    for (auto& [r, g] : acc)
        if (!g.is_zero()) out.emplace_back(r, std::move(g));
    return out;
}

EnvElem psi_P(const Polynomial& f, const OrbitData& O, const WeylContext& ctx) {
    if (!same_context(f.vars(), O.vars))
        throw std::invalid_argument("psi_P: mismatched variable contexts");
    auto decomp = harmonic_decompose(f, O.L);
    // Rebase powers of p onto powers of (p - c0):
    // p^r f_r = sum_q C(r,q) c0^{r-q} (p - c0)^q f_r.
    EnvElem pc = ctx.sym(O.p);
    pc.add_term(Word{}, -O.ch);
    EnvElem out(O.vars);
    for (const auto& [r, fr] : decomp) {
        EnvElem w = ctx.sym(fr);
        for (int q = 0; q <= r; ++q) {
            Scalar cq{BigRat(binomial(static_cast<unsigned>(r), static_cast<unsigned>(q)))};
            Polynomial weight = O.c0.pow(r - q).scale(cq);
            EnvElem term = w.scale(weight);
            for (int j = 0; j < q; ++j) term = ue_mul(pc, term, O.L);
            out += term;
        }
    }
    return out;
}

Polynomial psi_P_inv(const EnvElem& a, const OrbitData& O, const WeylContext& ctx) {
    // chi := W^{-1} o psi_P is unitriangular for the coordinate degree, so
    // F = chi(f) inverts by a finite Neumann iteration.
    Polynomial F = ctx.inv(a);
    Polynomial f = F;
    int guard = F.is_zero() ? 1 : F.coordinate_degree() + 2;
    for (int step = 0; step < guard; ++step) {
        Polynomial chi_f = ctx.inv(psi_P(f, O, ctx));
        if (chi_f == F) return f;
        f += F - chi_f;
    }
    throw std::logic_error("psi_P_inv: iteration failed to converge");
}

Polynomial star_P(const Polynomial& f, const Polynomial& g, const OrbitData& O,
                  const WeylContext& ctx) {
    return psi_P_inv(ue_mul(psi_P(f, O, ctx), psi_P(g, O, ctx), O.L), O, ctx);
}

StarProduct make_star_P(std::shared_ptr<const OrbitData> O,
                        std::shared_ptr<const WeylContext> ctx) {
    return {"psi_P", [O, ctx](const Polynomial& f, const Polynomial& g) {
                return star_P(f, g, *O, *ctx);
            }};
}

QuotientElement orbit_class(const EnvElem& a, const OrbitData& O) {
    return {ideal_reduce(a, O.casimir(), O.ch, O.L)};
}

QuotientElement orbit_class(const Polynomial& f, const OrbitData& O, const WeylContext& ctx) {
    return orbit_class(psi_su2(f, O, ctx), O);
}

QuotientElement star_PTheta(const QuotientElement& a, const QuotientElement& b,
                            const OrbitData& O) {
    return orbit_class(ue_mul(a.rep, b.rep, O.L), O);
}

} // namespace starq
