#include "starq/weyl.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

WeylContext::WeylContext(LieAlgebra L, VarSetPtr vars) : L_(std::move(L)), uvars_(std::move(vars)) {
    std::vector<std::string> ts;
    for (int i = 0; i < L_.dim(); ++i) ts.push_back("t@" + std::to_string(i + 1));
    evars_ = uvars_->with_params(ts);
    for (int i = 0; i < L_.dim(); ++i) {
        auto ci = uvars_->index_of(L_.coords()[static_cast<size_t>(i)]);
        if (!ci)
            throw std::invalid_argument("WeylContext: coordinate '" +
                                        L_.coords()[static_cast<size_t>(i)] + "' missing");
        coord_idx_.push_back(*ci);
        t_idx_.push_back(*evars_->index_of(ts[static_cast<size_t>(i)]));
    }
}

const EnvElem& WeylContext::xi_power(int p) const {
    // Caller holds mu_.
    if (xi_pow_.empty()) xi_pow_.push_back(EnvElem::unit(evars_));
    if (static_cast<int>(xi_pow_.size()) > p) return xi_pow_[static_cast<size_t>(p)];
    EnvElem xi(evars_);
    for (int i = 0; i < L_.dim(); ++i)
        xi.add_term(Word{i}, Polynomial::variable(evars_, t_idx_[static_cast<size_t>(i)]));
    while (static_cast<int>(xi_pow_.size()) <= p)
        xi_pow_.push_back(ue_mul(xi_pow_.back(), xi, L_));
    return xi_pow_[static_cast<size_t>(p)];
}

EnvElem WeylContext::sym_monomial(const std::vector<int>& alpha) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (auto it = sym_cache_.find(alpha); it != sym_cache_.end()) return it->second;
    int p = 0;
    for (int a : alpha) p += a;
    EnvElem out(uvars_);
    if (p == 0) {
        out = EnvElem::unit(uvars_);
    } else {
        const EnvElem& xp = xi_power(p);
        // W(x^alpha) = (alpha!/p!) [t^alpha] Xi^p.
        BigRat factor = BigRat(1, 1);
        for (int a : alpha) factor *= BigRat(factorial(static_cast<unsigned>(a)));
        factor /= BigRat(factorial(static_cast<unsigned>(p)));
        Scalar scale{factor};
        for (const auto& [w, cpoly] : xp.terms()) {
            Polynomial coeff(uvars_);
            for (const auto& [m, s] : cpoly.terms()) {
                bool match = true;
                for (size_t i = 0; i < alpha.size(); ++i)
                    if (m.deg(t_idx_[i]) != alpha[i]) {
                        match = false;
                        break;
                    }
                if (!match) continue;
                Monomial stripped = m;
                for (size_t i = 0; i < alpha.size(); ++i) stripped.set(t_idx_[i], 0);
                Monomial target(uvars_->size());
                for (int v = 0; v < uvars_->size(); ++v) target.set(v, stripped.deg(v));
                coeff.add_term(target, s * scale);
            }
            out.add_term(w, coeff);
        }
    }
    sym_cache_.emplace(alpha, out);
    return out;
}

EnvElem WeylContext::sym(const Polynomial& f) const {
    if (!same_context(f.vars(), uvars_))
        throw std::invalid_argument("WeylContext::sym: mismatched variable contexts");
    EnvElem out(uvars_);
    std::vector<int> alpha(static_cast<size_t>(L_.dim()));
    for (const auto& [m, c] : f.terms()) {
        Monomial rest = m;
        for (int i = 0; i < L_.dim(); ++i) {
            alpha[static_cast<size_t>(i)] = m.deg(coord_idx_[static_cast<size_t>(i)]);
            rest.set(coord_idx_[static_cast<size_t>(i)], 0);
        }
        EnvElem sm = sym_monomial(alpha);
        out += sm.scale(Polynomial::monomial(uvars_, rest, c));
    }
    return out;
}

Polynomial WeylContext::inv(const EnvElem& a) const {
    if (!same_context(a.vars(), uvars_))
        throw std::invalid_argument("WeylContext::inv: mismatched variable contexts");
    for (const auto& [w, c] : a.terms())
        for (const auto& [m, s] : c.terms())
            for (int i : coord_idx_)
                if (m.deg(i) != 0)
                    throw std::invalid_argument(
                        "WeylContext::inv: coefficient contains a coordinate variable");
    EnvElem rem = pbw_normalize(a, L_);
    Polynomial result(uvars_);
    while (!rem.is_zero()) {
        int d = rem.max_word_length();
        Polynomial top(uvars_);
        for (const auto& [w, c] : rem.terms()) {
            if (static_cast<int>(w.size()) != d) continue;
            Monomial m(uvars_->size());
            for (int g : w) m.bump(coord_idx_[static_cast<size_t>(g)], 1);
            for (const auto& [cm, cs] : c.terms()) top.add_term(m.times(cm), cs);
        }
        result += top;
        rem -= sym(top);
        if (!rem.is_zero() && rem.max_word_length() >= d)
            throw std::logic_error("WeylContext::inv: triangularity violated");
    }
    return result;
}

std::optional<std::string> WeylContext::derivation_violation(const ScalarMatrix& D) const {
    const int n = L_.dim();
    if (D.rows() != n || D.cols() != n)
        throw std::invalid_argument("derivation check: matrix shape mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // D[X_i,X_j] vs [DX_i,X_j] + [X_i,DX_j], coefficients of X_m.
            for (int m = 0; m < n; ++m) {
                Scalar lhs(0);
                for (int k = 0; k < n; ++k) lhs += L_.c(i, j, k) * D.at(m, k);
                Scalar rhs(0);
                for (int l = 0; l < n; ++l) {
                    rhs += D.at(l, i) * L_.c(l, j, m);
                    rhs += D.at(l, j) * L_.c(i, l, m);
                }
                if (lhs == rhs) continue;
                std::ostringstream os;
                os << "not a derivation on ([" << L_.basis()[static_cast<size_t>(i)] << ","
                   << L_.basis()[static_cast<size_t>(j)] << "]): X_" << m << " coefficient "
                   << lhs.str() << " vs " << rhs.str();
                return os.str();
            }
        }
    return std::nullopt;
}

Polynomial WeylContext::apply_poly_derivation(const ScalarMatrix& D, const Polynomial& f) const {
    Polynomial out(uvars_);
    for (int i = 0; i < L_.dim(); ++i) {
        Polynomial fi = f.partial(coord_idx_[static_cast<size_t>(i)]);
        if (fi.is_zero()) continue;
        Polynomial img(uvars_);
        for (int l = 0; l < L_.dim(); ++l) {
            if (D.at(l, i).is_zero()) continue;
            img.add_term(Monomial::of_var(*uvars_, coord_idx_[static_cast<size_t>(l)]), D.at(l, i));
        }
        out += fi * img;
    }
    return out;
}

EnvElem WeylContext::apply_ue_derivation(const ScalarMatrix& D, const EnvElem& a) const {
    EnvElem out(uvars_);
    for (const auto& [w, c] : a.terms()) {
        for (size_t pos = 0; pos < w.size(); ++pos) {
            int g = w[pos];
            for (int l = 0; l < L_.dim(); ++l) {
                const Scalar& d = D.at(l, g);
                if (d.is_zero()) continue;
                Word nw = w;
                nw[pos] = l;
                out.add_term(nw, c.scale(d));
            }
        }
    }
    return pbw_normalize(out, L_);
}

Report WeylContext::check_intertwining(const ScalarMatrix& D, int degree) const {
    Report rep;
    rep.summary = "Weyl intertwining W o Abar = Atilde o W, degree <= " + std::to_string(degree);
    if (auto bad = derivation_violation(D)) {
        rep.fail("precondition: " + *bad);
        return rep;
    }
    for (const auto& m : coordinate_monomials(*uvars_, degree)) {
        Polynomial f = Polynomial::monomial(uvars_, m, Scalar(1));
        EnvElem lhs = sym(apply_poly_derivation(D, f));
        EnvElem rhs = apply_ue_derivation(D, sym(f));
        if (lhs == rhs) continue;
        rep.fail("fails on monomial " + f.str());
        return rep;
    }
    return rep;
}

} // namespace starq
