#include "starq/poly.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace starq {

VarSetPtr VarSet::make(std::vector<std::string> coords, std::vector<std::string> params) {
    auto vs = std::shared_ptr<VarSet>(new VarSet());
    vs->names_ = std::move(coords);
    vs->n_coords_ = static_cast<int>(vs->names_.size());
    vs->names_.push_back("h");
    for (auto& p : params) vs->names_.push_back(std::move(p));
    for (size_t a = 0; a < vs->names_.size(); ++a)
        for (size_t b = a + 1; b < vs->names_.size(); ++b)
            if (vs->names_[a] == vs->names_[b])
                throw std::invalid_argument("VarSet: duplicate variable '" + vs->names_[a] + "'");
    return vs;
}

std::optional<int> VarSet::index_of(const std::string& name) const {
    for (size_t k = 0; k < names_.size(); ++k)
        if (names_[k] == name) return static_cast<int>(k);
    return std::nullopt;
}

VarSetPtr VarSet::with_params(const std::vector<std::string>& extra) const {
    std::vector<std::string> coords(names_.begin(), names_.begin() + n_coords_);
    std::vector<std::string> params(names_.begin() + n_coords_ + 1, names_.end());
    params.insert(params.end(), extra.begin(), extra.end());
    return make(std::move(coords), std::move(params));
}

bool same_context(const VarSetPtr& a, const VarSetPtr& b) {
    if (a.get() == b.get()) return true;
    return a && b && a->same(*b);
}

Monomial Monomial::of_var(const VarSet& vs, int index, int power) {
    Monomial m(vs.size());
    m.set(index, power);
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (int v : e_) d += v;
    return d;
}

Monomial Monomial::times(const Monomial& o) const {
    assert(e_.size() == o.e_.size());
    Monomial m = *this;
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] += o.e_[k];
    return m;
}

bool Monomial::divisible_by(const Monomial& o) const {
    assert(e_.size() == o.e_.size());
    for (size_t k = 0; k < e_.size(); ++k)
        if (e_[k] < o.e_[k]) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    assert(divisible_by(o));
    Monomial m = *this;
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] -= o.e_[k];
    return m;
}

bool Monomial::is_unit() const {
    return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

bool Monomial::less(const Monomial& o) const {
    assert(e_.size() == o.e_.size());
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (size_t k = 0; k < e_.size(); ++k)
        if (e_[k] != o.e_[k]) return e_[k] < o.e_[k];
    return false;
}

Polynomial Polynomial::constant(VarSetPtr vars, const Scalar& c) {
    Polynomial p(vars);
    p.add_term(Monomial(vars->size()), c);
    return p;
}

Polynomial Polynomial::variable(VarSetPtr vars, int index) {
    Polynomial p(vars);
    p.add_term(Monomial::of_var(*vars, index), Scalar(1));
    return p;
}

Polynomial Polynomial::monomial(VarSetPtr vars, const Monomial& m, const Scalar& c) {
    Polynomial p(vars);
    p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.is_unit();
}

Scalar Polynomial::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw std::domain_error("Polynomial: not a constant: " + str());
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

int Polynomial::coordinate_degree() const {
    int d = -1;
    int nc = vars_->n_coords();
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int i = 0; i < nc; ++i) t += m.deg(i);
        d = std::max(d, t);
    }
    return d;
}

int Polynomial::h_degree() const { return degree_in(vars_->h_index()); }

int Polynomial::degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg(var));
    return d;
}

Scalar Polynomial::coefficient_of(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Polynomial Polynomial::h_coefficient(int k) const { return var_coefficient(vars_->h_index(), k); }

Polynomial Polynomial::var_coefficient(int var, int k) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        if (m.deg(var) != k) continue;
        Monomial n = m;
        n.set(var, 0);
        out.add_term(n, c);
    }
    return out;
}

Polynomial Polynomial::truncate_h(int K) const {
    int h = vars_->h_index();
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_)
        if (m.deg(h) <= K) out.add_term(m, c);
    return out;
}

Polynomial Polynomial::partial(int var) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        int e = m.deg(var);
        if (e == 0) continue;
        Monomial n = m;
        n.set(var, e - 1);
        out.add_term(n, c * Scalar(e));
    }
    return out;
}

Polynomial Polynomial::substitute(int var, const Polynomial& value) const {
    if (!same_context(vars_, value.vars()))
        throw std::invalid_argument("Polynomial::substitute: context mismatch");
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        int e = m.deg(var);
        Monomial rest = m;
        rest.set(var, 0);
        Polynomial term = Polynomial::monomial(vars_, rest, c);
        if (e > 0) term *= value.pow(e);
        out += term;
    }
    return out;
}

Polynomial Polynomial::scale(const Scalar& c) const {
    Polynomial out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
    return out;
}

Polynomial Polynomial::times_var(int var, int power) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        n.bump(var, power);
        out.terms_.emplace(n, c);
    }
    return out;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::domain_error("Polynomial::pow: negative exponent");
    Polynomial acc = Polynomial::one(vars_);
    for (int j = 0; j < k; ++j) acc *= *this;
    return acc;
}

Polynomial Polynomial::transport(const VarSetPtr& target) const {
    std::vector<int> map(static_cast<size_t>(vars_->size()), -1);
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
        Monomial n(target->size());
        for (int i = 0; i < vars_->size(); ++i) {
            int e = m.deg(i);
            if (e == 0) continue;
            if (map[static_cast<size_t>(i)] < 0) {
                auto idx = target->index_of(vars_->name(i));
                if (!idx)
                    throw std::invalid_argument("Polynomial::transport: variable '" +
                                                vars_->name(i) + "' missing in target context");
                map[static_cast<size_t>(i)] = *idx;
            }
            n.set(map[static_cast<size_t>(i)], e);
        }
        out.add_term(n, c);
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (!same_context(vars_, o.vars_))
        throw std::invalid_argument("Polynomial: mismatched variable contexts");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (!same_context(vars_, o.vars_))
        throw std::invalid_argument("Polynomial: mismatched variable contexts");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (!same_context(a.vars(), b.vars()))
        throw std::invalid_argument("Polynomial: mismatched variable contexts");
    Polynomial out(a.vars());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out.add_term(ma.times(mb), ca * cb);
    return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return same_context(vars_, o.vars_) && terms_ == o.terms_;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const std::pair<const Monomial, Scalar>& Polynomial::leading() const {
    if (terms_.empty()) throw std::domain_error("Polynomial::leading: zero polynomial");
    return *terms_.rbegin();
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(const Scalar& c, const Polynomial& p) { return p.scale(c); }

namespace {

// Variable print order inside a term: h first, then parameters, then
// coordinates in declared order.  Canonical output like "(1/2)*h*z".
void append_vars(std::string& out, const VarSet& vs, const Monomial& m) {
    auto emit = [&](int i) {
        int e = m.deg(i);
        if (e == 0) return;
        out += '*';
        out += vs.name(i);
        if (e != 1) {
            out += '^';
            out += std::to_string(e);
        }
    };
    emit(vs.h_index());
    for (int i = vs.h_index() + 1; i < vs.size(); ++i) emit(i);
    for (int i = 0; i < vs.n_coords(); ++i) emit(i);
}

std::string coeff_str(const Scalar& c) {
    // |c| as a printable factor; fractions and Gaussian values parenthesized.
    if (c.is_real()) {
        BigRat q = c.re();
        if (q < 0) q = -q;
        std::ostringstream os;
        if (denominator(q) == 1) {
            os << numerator(q);
            return os.str();
        }
        os << '(' << numerator(q) << '/' << denominator(q) << ')';
        return os.str();
    }
    return "(" + c.str() + ")";
}

} // namespace

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        const Scalar& c = it->second;
        bool neg = c.is_negative_real();
        if (first) {
            if (neg) out += '-';
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        Scalar mag = neg ? -c : c;
        if (m.is_unit()) {
            out += coeff_str(mag);
        } else {
            std::string body;
            if (!mag.is_one()) body += coeff_str(mag);
            std::string vars;
            append_vars(vars, *vars_, m);
            if (body.empty()) {
                body = vars.substr(1); // drop the leading '*'
            } else {
                body += vars;
            }
            out += body;
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

DivModResult divmod_in_var(const Polynomial& f, const Polynomial& g, int var) {
    if (!same_context(f.vars(), g.vars()))
        throw std::invalid_argument("divmod_in_var: context mismatch");
    int d = g.degree_in(var);
    if (d < 1) throw std::domain_error("divmod_in_var: divisor has no " +
                                       g.vars()->name(var) + " dependence");
    Polynomial lead = g.var_coefficient(var, d);
    if (!lead.is_constant() || lead.is_zero())
        throw std::domain_error("divmod_in_var: divisor is not monic in " + g.vars()->name(var));
    Scalar lc = lead.constant_value();

    Polynomial quot(f.vars());
    Polynomial rem = f;
    while (!rem.is_zero() && rem.degree_in(var) >= d) {
        int k = rem.degree_in(var);
        Polynomial ck = rem.var_coefficient(var, k).scale(lc.inverse());
        Polynomial step = ck.times_var(var, k - d);
        quot += step;
        rem -= step * g;
        if (!rem.is_zero() && rem.degree_in(var) >= k)
            throw std::logic_error("divmod_in_var: no progress"); // unreachable for monic g
    }
    return {std::move(quot), std::move(rem)};
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (!same_context(f.vars(), g.vars()))
        throw std::invalid_argument("exact_divide: context mismatch");
    if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
    Polynomial quot(f.vars());
    Polynomial rem = f;
    const auto& [gm, gc] = g.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!rm.divisible_by(gm))
            throw std::domain_error("exact_divide: not divisible");
        Polynomial t = Polynomial::monomial(rem.vars(), rm.divided_by(gm), rc / gc);
        quot += t;
        rem -= t * g;
    }
    return quot;
}

Polynomial divide_by_h(const Polynomial& f) {
    int h = f.vars()->h_index();
    Polynomial out(f.vars());
    for (const auto& [m, c] : f.terms()) {
        if (m.deg(h) == 0) throw std::domain_error("divide_by_h: not divisible by h");
        Monomial n = m;
        n.bump(h, -1);
        out.add_term(n, c);
    }
    return out;
}

namespace {

void enumerate_rec(const VarSet& vs, int var, int remaining, Monomial& m,
                   std::vector<Monomial>& out) {
    if (var == vs.n_coords()) {
        out.push_back(m);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        m.set(var, e);
        enumerate_rec(vs, var + 1, remaining - e, m, out);
    }
    m.set(var, 0);
}

} // namespace

std::vector<Monomial> coordinate_monomials(const VarSet& vs, int max_degree) {
    std::vector<Monomial> out;
    Monomial m(vs.size());
    enumerate_rec(vs, 0, max_degree, m, out);
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

} // namespace starq
