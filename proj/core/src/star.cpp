#include "starq/star.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

PoissonMatrix::PoissonMatrix(ScalarMatrix mat) : m(std::move(mat)) {
    if (m.rows() != m.cols()) throw std::invalid_argument("PoissonMatrix: not square");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!(m.at(i, j) + m.at(j, i)).is_zero())
                throw std::invalid_argument("PoissonMatrix: not antisymmetric");
}

PoissonMatrix PoissonMatrix::standard_symplectic(int n_coords) {
    if (n_coords % 2 != 0)
        throw std::invalid_argument("PoissonMatrix: odd dimension has no symplectic form");
    ScalarMatrix m(n_coords, n_coords);
    for (int k = 0; k < n_coords / 2; ++k) {
        m.at(2 * k, 2 * k + 1) = Scalar(1);
        m.at(2 * k + 1, 2 * k) = Scalar(-1);
    }
    return PoissonMatrix(std::move(m));
}

Polynomial star_S(const Polynomial& f, const Polynomial& g, const WeylContext& ctx) {
    return ctx.inv(ue_mul(ctx.sym(f), ctx.sym(g), ctx.algebra()));
}

StarProduct make_star_weyl(std::shared_ptr<const WeylContext> ctx) {
    return {"weyl_S", [ctx](const Polynomial& f, const Polynomial& g) {
                return star_S(f, g, *ctx);
            }};
}

Polynomial moyal_heisenberg(const Polynomial& f, const Polynomial& g, std::optional<int> K) {
    if (!same_context(f.vars(), g.vars()))
        throw std::invalid_argument("moyal_heisenberg: mismatched variable contexts");
    const auto& vars = f.vars();
    auto qi = vars->index_of("q");
    auto pi = vars->index_of("p");
    auto ei = vars->index_of("e'");
    if (!qi || !pi || !ei)
        throw std::invalid_argument("moyal_heisenberg: context must contain q, p, e'");
    int h = vars->h_index();

    Polynomial out(vars);
    Scalar half = Scalar::ratio(1, 2);
    int kmax = std::min(f.total_degree() < 0 ? 0 : f.total_degree(),
                        g.total_degree() < 0 ? 0 : g.total_degree());
    if (K) kmax = std::min(kmax, *K);
    for (int k = 0; k <= kmax; ++k) {
        // P^k(f,g) = sum_a C(k,a) (-1)^{k-a} dq^a dp^{k-a} f * dp^a dq^{k-a} g
        Polynomial pk(vars);
        for (int a = 0; a <= k; ++a) {
            Polynomial df = f, dg = g;
            for (int t = 0; t < a; ++t) df = df.partial(*qi);
            for (int t = 0; t < k - a; ++t) df = df.partial(*pi);
            if (df.is_zero()) continue;
            for (int t = 0; t < a; ++t) dg = dg.partial(*pi);
            for (int t = 0; t < k - a; ++t) dg = dg.partial(*qi);
            if (dg.is_zero()) continue;
            Scalar w{BigRat(binomial(static_cast<unsigned>(k), static_cast<unsigned>(a)))};
            if ((k - a) % 2 != 0) w = -w;
            pk += w * (df * dg);
        }
        if (pk.is_zero()) continue;
        // (1/k!) ((h/2) e')^k
        Scalar factor = half.pow(static_cast<unsigned>(k)) *
                        Scalar{BigRat(1, factorial(static_cast<unsigned>(k)))};
        Monomial he(vars->size());
        he.set(h, k);
        he.bump(*ei, k);
        out += Polynomial::monomial(vars, he, factor) * pk;
    }
    if (K) out = out.truncate_h(*K);
    return out;
}

StarProduct make_star_moyal_heisenberg(std::optional<int> K) {
    return {"moyal_heis", [K](const Polynomial& f, const Polynomial& g) {
                return moyal_heisenberg(f, g, K);
            }};
}

Polynomial moyal_r2n(const Polynomial& f, const Polynomial& g, const PoissonMatrix& P) {
    if (!same_context(f.vars(), g.vars()))
        throw std::invalid_argument("moyal_r2n: mismatched variable contexts");
    const auto& vars = f.vars();
    if (vars->n_coords() != P.dim())
        throw std::invalid_argument("moyal_r2n: Poisson matrix dimension mismatch");
    int h = vars->h_index();

    // Iterated contraction: carry (derived f, derived g, weight) triples.
    struct Item {
        Polynomial df, dg;
        Scalar w;
    };
    std::vector<Item> items{{f, g, Scalar(1)}};
    Polynomial out(vars);
    Scalar half = Scalar::ratio(1, 2);
    int kmax = std::min(f.total_degree() < 0 ? 0 : f.total_degree(),
                        g.total_degree() < 0 ? 0 : g.total_degree());
    for (int k = 0; k <= kmax; ++k) {
        Polynomial pk(vars);
        for (const auto& it : items) pk += it.w * (it.df * it.dg);
        if (!pk.is_zero()) {
            Scalar factor = half.pow(static_cast<unsigned>(k)) *
                            Scalar{BigRat(1, factorial(static_cast<unsigned>(k)))};
            out += Polynomial::monomial(vars, Monomial::of_var(*vars, h, k), factor) * pk;
        }
        if (k == kmax) break;
        std::vector<Item> next;
        for (const auto& it : items) {
            for (int i = 0; i < P.dim(); ++i)
                for (int j = 0; j < P.dim(); ++j) {
                    const Scalar& pij = P.m.at(i, j);
                    if (pij.is_zero()) continue;
                    Polynomial df = it.df.partial(i);
                    if (df.is_zero()) continue;
                    Polynomial dg = it.dg.partial(j);
                    if (dg.is_zero()) continue;
                    next.push_back({std::move(df), std::move(dg), it.w * pij});
                }
        }
        items = std::move(next);
        if (items.empty()) break;
    }
    return out;
}

StarProduct make_star_moyal_r2n(PoissonMatrix P, std::optional<int> K) {
    auto shared = std::make_shared<PoissonMatrix>(std::move(P));
    return {"moyal_r2n", [shared, K](const Polynomial& f, const Polynomial& g) {
                Polynomial r = moyal_r2n(f, g, *shared);
                return K ? r.truncate_h(*K) : r;
            }};
}

Report check_semiclassical(const StarProduct& S, const LieAlgebra& L, const VarSetPtr& vars,
                           int degree) {
    Report rep;
    rep.summary = "semiclassical limits of " + S.name + " on " + L.name() +
                  ", degree <= " + std::to_string(degree);
    int h = vars->h_index();
    Polynomial zero = Polynomial::zero(vars);
    auto monos = coordinate_monomials(*vars, degree);
    for (const auto& ma : monos)
        for (const auto& mb : monos) {
            Polynomial f = Polynomial::monomial(vars, ma, Scalar(1));
            Polynomial g = Polynomial::monomial(vars, mb, Scalar(1));
            Polynomial fg = S(f, g);
            if (!(fg.substitute(h, zero) == f * g)) {
                rep.fail("h->0 limit fails on (" + f.str() + ", " + g.str() + ")");
                return rep;
            }
            Polynomial comm = fg - S(g, f);
            if (!comm.h_coefficient(0).is_zero()) {
                rep.fail("commutator not divisible by h on (" + f.str() + ", " + g.str() + ")");
                return rep;
            }
            Polynomial lim = comm.is_zero() ? comm : divide_by_h(comm).substitute(h, zero);
            if (!(lim == L.kirillov(f, g))) {
                rep.fail("commutator/h at h=0 differs from the Kirillov bracket on (" + f.str() +
                         ", " + g.str() + ")");
                return rep;
            }
        }
    return rep;
}

std::optional<int> division_variable(const Polynomial& g) {
    const auto& vars = g.vars();
    for (int v = vars->n_coords() - 1; v >= 0; --v) {
        int d = g.degree_in(v);
        if (d < 1) continue;
        Polynomial lead = g.var_coefficient(v, d);
        if (lead.is_constant() && !lead.is_zero()) return v;
    }
    return std::nullopt;
}

TangentialReport check_tangential(const StarProduct& S, const std::vector<Polynomial>& generators,
                                  int degree, int h_order) {
    TangentialReport rep;
    rep.summary = "tangentiality of " + S.name + ", degree <= " + std::to_string(degree) +
                  ", h-order <= " + std::to_string(h_order);
    if (generators.empty()) throw std::invalid_argument("check_tangential: no generators");
    for (size_t gi = 0; gi < generators.size(); ++gi) {
        const Polynomial& gen = generators[gi];
        auto v = division_variable(gen);
        if (!v)
            throw std::invalid_argument(
                "check_tangential: generator has no monic pure-power leading variable: " +
                gen.str());
        const auto& vars = gen.vars();
        for (const auto& m : coordinate_monomials(*vars, degree)) {
            Polynomial f = Polynomial::monomial(vars, m, Scalar(1));
            for (int side = 0; side < 2; ++side) {
                Polynomial prod = side == 0 ? S(gen, f) : S(f, gen);
                for (int k = 0; k <= h_order; ++k) {
                    Polynomial pk = prod.h_coefficient(k);
                    if (pk.is_zero()) continue;
                    Polynomial remainder = divmod_in_var(pk, gen, *v).rem;
                    if (remainder.is_zero()) continue;
                    rep.pass = false;
                    rep.witnesses.push_back({static_cast<int>(gi),
                                             side == 0 ? "left" : "right", f, k,
                                             remainder});
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace starq
