#include "starq/liealg.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

namespace {

std::vector<Scalar> empty_tensor(int n) {
    return std::vector<Scalar>(static_cast<size_t>(n) * n * n);
}

void set_bracket(std::vector<Scalar>& c, int n, int i, int j, int k, const Scalar& v) {
    c[static_cast<size_t>((i * n + j) * n + k)] = v;
    c[static_cast<size_t>((j * n + i) * n + k)] = -v;
}

} // namespace

LieAlgebra LieAlgebra::heisenberg() {
    auto c = empty_tensor(3);
    set_bracket(c, 3, 0, 1, 2, Scalar(1)); // [Q,P] = E'
    return from_structure("heisenberg", {"Q", "P", "E'"}, {"q", "p", "e'"}, std::move(c));
}

LieAlgebra LieAlgebra::su2() {
    auto c = empty_tensor(3);
    set_bracket(c, 3, 0, 1, 2, Scalar(1)); // [X,Y] = Z
    set_bracket(c, 3, 1, 2, 0, Scalar(1)); // [Y,Z] = X
    set_bracket(c, 3, 2, 0, 1, Scalar(1)); // [Z,X] = Y
    return from_structure("su2", {"X", "Y", "Z"}, {"x", "y", "z"}, std::move(c));
}

LieAlgebra LieAlgebra::sl2() {
    // Basis chosen so that dual coordinates stay clear of the parameter h:
    // Z plays the Cartan role, [X,Y]=Z, [Z,X]=2X, [Z,Y]=-2Y.
    auto c = empty_tensor(3);
    set_bracket(c, 3, 0, 1, 2, Scalar(1));
    set_bracket(c, 3, 2, 0, 0, Scalar(2));
    set_bracket(c, 3, 2, 1, 1, Scalar(-2));
    return from_structure("sl2", {"X", "Y", "Z"}, {"x", "y", "z"}, std::move(c));
}

std::optional<LieAlgebra> LieAlgebra::builtin(const std::string& name) {
    if (name == "heisenberg") return heisenberg();
    if (name == "su2") return su2();
    if (name == "sl2") return sl2();
    return std::nullopt;
}

LieAlgebra LieAlgebra::from_structure(std::string name, std::vector<std::string> basis,
                                      std::vector<std::string> coords,
                                      std::vector<Scalar> c_tensor) {
    LieAlgebra L;
    L.name_ = std::move(name);
    L.n_ = static_cast<int>(basis.size());
    if (coords.size() != basis.size())
        throw std::invalid_argument("LieAlgebra: basis/coordinate count mismatch");
    if (c_tensor.size() != static_cast<size_t>(L.n_) * L.n_ * L.n_)
        throw std::invalid_argument("LieAlgebra: structure tensor size mismatch");
    L.basis_ = std::move(basis);
    L.coords_ = std::move(coords);
    L.c_ = std::move(c_tensor);
    return L;
}

VarSetPtr LieAlgebra::dual_vars(std::vector<std::string> params) const {
    return VarSet::make(coords_, std::move(params));
}

Polynomial LieAlgebra::bracket_basis(const VarSetPtr& vars, int i, int j) const {
    Polynomial out(vars);
    for (int k = 0; k < n_; ++k) {
        const Scalar& s = c(i, j, k);
        if (s.is_zero()) continue;
        auto idx = vars->index_of(coords_[static_cast<size_t>(k)]);
        if (!idx) throw std::invalid_argument("bracket_basis: coordinate missing in context");
        out.add_term(Monomial::of_var(*vars, *idx), s);
    }
    return out;
}

Report LieAlgebra::validate() const {
    Report rep;
    rep.summary = "lie algebra axioms";
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                if (c(i, j, k) + c(j, i, k) == Scalar(0)) continue;
                std::ostringstream os;
                os << "antisymmetry fails at (i,j,k)=(" << i << ',' << j << ',' << k
                   << "): c=" << c(i, j, k).str() << " vs " << c(j, i, k).str();
                rep.fail(os.str());
                return rep;
            }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    Scalar sum(0);
                    for (int m = 0; m < n_; ++m) {
                        sum += c(i, j, m) * c(m, k, l);
                        sum += c(j, k, m) * c(m, i, l);
                        sum += c(k, i, m) * c(m, j, l);
                    }
                    if (sum.is_zero()) continue;
                    std::ostringstream os;
                    os << "Jacobi fails at (i,j,k,l)=(" << i << ',' << j << ',' << k << ',' << l
                       << "): residue " << sum.str();
                    rep.fail(os.str());
                    return rep;
                }
    return rep;
}

Polynomial LieAlgebra::kirillov(const Polynomial& f, const Polynomial& g) const {
    if (!same_context(f.vars(), g.vars()))
        throw std::invalid_argument("kirillov: mismatched variable contexts");
    const auto& vars = f.vars();
    std::vector<int> idx(static_cast<size_t>(n_));
    for (int k = 0; k < n_; ++k) {
        auto it = vars->index_of(coords_[static_cast<size_t>(k)]);
        if (!it) throw std::invalid_argument("kirillov: coordinate '" +
                                             coords_[static_cast<size_t>(k)] +
                                             "' missing in context");
        idx[static_cast<size_t>(k)] = *it;
    }
    Polynomial out(vars);
    for (int i = 0; i < n_; ++i) {
        Polynomial fi = f.partial(idx[static_cast<size_t>(i)]);
        if (fi.is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            Polynomial gj = g.partial(idx[static_cast<size_t>(j)]);
            if (gj.is_zero()) continue;
            Polynomial lin(vars);
            for (int k = 0; k < n_; ++k) {
                const Scalar& s = c(i, j, k);
                if (s.is_zero()) continue;
                lin.add_term(Monomial::of_var(*vars, idx[static_cast<size_t>(k)]), s);
            }
            if (lin.is_zero()) continue;
            out += lin * fi * gj;
        }
    }
    return out;
}

Report LieAlgebra::poisson_properties(int degree) const {
    Report rep;
    rep.summary = "Poisson axioms for the Kirillov bracket, degree <= " + std::to_string(degree);
    auto vars = dual_vars();
    auto monos = coordinate_monomials(*vars, degree);
    std::vector<Polynomial> ms;
    ms.reserve(monos.size());
    for (const auto& m : monos) ms.push_back(Polynomial::monomial(vars, m, Scalar(1)));

    for (size_t a = 0; a < ms.size(); ++a)
        for (size_t b = a; b < ms.size(); ++b) {
            if (!(kirillov(ms[a], ms[b]) + kirillov(ms[b], ms[a])).is_zero()) {
                rep.fail("antisymmetry fails on (" + ms[a].str() + ", " + ms[b].str() + ")");
                return rep;
            }
        }
    for (size_t a = 0; a < ms.size(); ++a)
        for (size_t b = 0; b < ms.size(); ++b)
            for (size_t cidx = b; cidx < ms.size(); ++cidx) {
                Polynomial lhs = kirillov(ms[a], ms[b] * ms[cidx]);
                Polynomial rhs = kirillov(ms[a], ms[b]) * ms[cidx] + ms[b] * kirillov(ms[a], ms[cidx]);
                if (!(lhs == rhs)) {
                    rep.fail("Leibniz fails on (" + ms[a].str() + ", " + ms[b].str() + ", " +
                             ms[cidx].str() + ")");
                    return rep;
                }
            }
    for (size_t a = 0; a < ms.size(); ++a)
        for (size_t b = a; b < ms.size(); ++b)
            for (size_t cidx = b; cidx < ms.size(); ++cidx) {
                Polynomial sum = kirillov(ms[a], kirillov(ms[b], ms[cidx])) +
                                 kirillov(ms[b], kirillov(ms[cidx], ms[a])) +
                                 kirillov(ms[cidx], kirillov(ms[a], ms[b]));
                if (!sum.is_zero()) {
                    rep.fail("Jacobi fails on (" + ms[a].str() + ", " + ms[b].str() + ", " +
                             ms[cidx].str() + "): residue " + sum.str());
                    return rep;
                }
            }
    return rep;
}

ScalarMatrix LieAlgebra::ad_matrix(int k) const {
    ScalarMatrix d(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int l = 0; l < n_; ++l) d.at(l, i) = c(k, i, l);
    return d;
}

ScalarMatrix heisenberg_coadjoint(const HeisenbergElement& g) {
    ScalarMatrix m = ScalarMatrix::identity(3);
    m.at(0, 2) = g.b;
    m.at(1, 2) = -g.a;
    return m;
}

} // namespace starq
