#include "starq/glue.hpp"

#include "starq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

LinDiffOp LinDiffOp::identity(VarSetPtr vars) {
    LinDiffOp op(vars);
    op.add_term(Monomial(vars->size()), Polynomial::one(vars));
    return op;
}

LinDiffOp LinDiffOp::derivative(VarSetPtr vars, const Monomial& order) {
    LinDiffOp op(vars);
    op.add_term(order, Polynomial::one(vars));
    return op;
}

bool LinDiffOp::is_identity() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit() &&
           terms_.begin()->second == Polynomial::one(vars_);
}

void LinDiffOp::add_term(const Monomial& order, const Polynomial& coeff) {
    for (int v = vars_->h_index(); v < vars_->size(); ++v)
        if (order.deg(v) != 0)
            throw std::invalid_argument("LinDiffOp: derivatives only in coordinate variables");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(order, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial LinDiffOp::apply(const Polynomial& f) const {
    if (!same_context(vars_, f.vars()))
        throw std::invalid_argument("LinDiffOp::apply: mismatched variable contexts");
    Polynomial out(vars_);
    for (const auto& [order, coeff] : terms_) {
        Polynomial d = f;
        for (int v = 0; v < vars_->n_coords() && !d.is_zero(); ++v)
            for (int t = 0; t < order.deg(v); ++t) d = d.partial(v);
        if (d.is_zero()) continue;
        out += coeff * d;
    }
    return out;
}

LinDiffOp LinDiffOp::compose(const LinDiffOp& other) const {
    if (!same_context(vars_, other.vars_))
        throw std::invalid_argument("LinDiffOp::compose: mismatched variable contexts");
    LinDiffOp out(vars_);
    const int nc = vars_->n_coords();
    for (const auto& [a, c] : terms_) {
        for (const auto& [b, d] : other.terms_) {
            // c d^a (d(x) d^b .) = sum_{beta <= a} binom(a, beta)
            //                      c d^{a-beta}(d) d^{beta+b}
            std::vector<int> beta(static_cast<size_t>(nc), 0);
            for (;;) {
                Scalar w(1);
                for (int v = 0; v < nc; ++v)
                    w *= Scalar{BigRat(binomial(static_cast<unsigned>(a.deg(v)),
                                                static_cast<unsigned>(beta[static_cast<size_t>(v)])))};
                Polynomial dcoef = d;
                for (int v = 0; v < nc && !dcoef.is_zero(); ++v)
                    for (int t = 0; t < a.deg(v) - beta[static_cast<size_t>(v)]; ++t)
                        dcoef = dcoef.partial(v);
                if (!dcoef.is_zero()) {
                    Monomial ord = b;
                    for (int v = 0; v < nc; ++v) ord.bump(v, beta[static_cast<size_t>(v)]);
                    out.add_term(ord, (c * dcoef).scale(w));
                }
                // next beta <= a
                int v = 0;
                while (v < nc) {
                    if (beta[static_cast<size_t>(v)] < a.deg(v)) {
                        ++beta[static_cast<size_t>(v)];
                        break;
                    }
                    beta[static_cast<size_t>(v)] = 0;
                    ++v;
                }
                if (v == nc) break;
            }
        }
    }
    return out;
}

LinDiffOp LinDiffOp::scaled(const Polynomial& coeff) const {
    LinDiffOp out(vars_);
    for (const auto& [order, c] : terms_) out.add_term(order, coeff * c);
    return out;
}

LinDiffOp LinDiffOp::scaled(const Scalar& c) const {
    LinDiffOp out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [order, k] : terms_) out.add_term(order, k.scale(c));
    return out;
}

LinDiffOp& LinDiffOp::operator+=(const LinDiffOp& o) {
    if (!same_context(vars_, o.vars_))
        throw std::invalid_argument("LinDiffOp: mismatched variable contexts");
    for (const auto& [order, c] : o.terms_) add_term(order, c);
    return *this;
}

bool LinDiffOp::operator==(const LinDiffOp& o) const {
    return same_context(vars_, o.vars_) && terms_ == o.terms_;
}

FormalOperator::FormalOperator(int K, VarSetPtr vars) : K_(K), vars_(std::move(vars)) {
    if (K < 0) throw std::invalid_argument("FormalOperator: negative order");
    comp_.assign(static_cast<size_t>(K) + 1, LinDiffOp(vars_));
}

FormalOperator FormalOperator::identity(int K, VarSetPtr vars) {
    FormalOperator op(K, vars);
    op.comp_[0] = LinDiffOp::identity(op.vars_);
    return op;
}

FormalOperator FormalOperator::exp_h(const LinDiffOp& G, int K) {
    FormalOperator op = identity(K, G.vars());
    LinDiffOp power = LinDiffOp::identity(G.vars());
    BigRat fact = 1;
    for (int m = 1; m <= K; ++m) {
        power = G.compose(power);
        fact *= m;
        op.comp_[static_cast<size_t>(m)] = power.scaled(Scalar{BigRat(1) / fact});
    }
    return op;
}

void FormalOperator::set_component(int k, LinDiffOp op) {
    comp_[static_cast<size_t>(k)] = std::move(op);
}

Polynomial FormalOperator::apply(const Polynomial& f) const {
    Polynomial out(vars_);
    int h = vars_->h_index();
    for (int k = 0; k <= K_; ++k) {
        Polynomial part = comp_[static_cast<size_t>(k)].apply(f);
        if (part.is_zero()) continue;
        out += part.times_var(h, k);
    }
    return out.truncate_h(K_);
}

FormalOperator FormalOperator::compose(const FormalOperator& other) const {
    int K = std::min(K_, other.K_);
    FormalOperator out(K, vars_);
    for (int m = 0; m <= K; ++m) {
        LinDiffOp cm(vars_);
        for (int k = 0; k <= m; ++k)
            cm += comp_[static_cast<size_t>(k)].compose(other.comp_[static_cast<size_t>(m - k)]);
        out.comp_[static_cast<size_t>(m)] = std::move(cm);
    }
    return out;
}

FormalOperator FormalOperator::inverse() const {
    if (!comp_[0].is_identity())
        throw std::domain_error("FormalOperator::inverse: zeroth order is not the identity");
    FormalOperator inv = identity(K_, vars_);
    for (int m = 1; m <= K_; ++m) {
        LinDiffOp bm(vars_);
        for (int k = 0; k < m; ++k) {
            LinDiffOp t = inv.comp_[static_cast<size_t>(k)].compose(comp_[static_cast<size_t>(m - k)]);
            bm += t.scaled(Scalar(-1));
        }
        inv.comp_[static_cast<size_t>(m)] = std::move(bm);
    }
    return inv;
}

FormalOperator FormalOperator::scaled(const Polynomial& coeff) const {
    FormalOperator out(K_, vars_);
    for (int k = 0; k <= K_; ++k)
        out.comp_[static_cast<size_t>(k)] = comp_[static_cast<size_t>(k)].scaled(coeff);
    return out;
}

FormalOperator FormalOperator::operator+(const FormalOperator& o) const {
    if (K_ != o.K_) throw std::invalid_argument("FormalOperator: order mismatch");
    FormalOperator out = *this;
    for (int k = 0; k <= K_; ++k) out.comp_[static_cast<size_t>(k)] += o.comp_[static_cast<size_t>(k)];
    return out;
}

bool FormalOperator::operator==(const FormalOperator& o) const {
    if (K_ != o.K_ || !same_context(vars_, o.vars_)) return false;
    for (int k = 0; k <= K_; ++k)
        if (!(comp_[static_cast<size_t>(k)] == o.comp_[static_cast<size_t>(k)])) return false;
    return true;
}

const FormalOperator& GluingInstance::T(int s, int r) const {
    auto it = transitions.find({s, r});
    if (it == transitions.end())
        throw std::invalid_argument("GluingInstance: missing transition T_" +
                                    std::to_string(s + 1) + std::to_string(r + 1));
    return it->second;
}

Report GluingInstance::validate() const {
    Report rep;
    rep.summary = "gluing instance invariants";
    Polynomial sum(vars);
    for (const auto& w : weights) sum += w;
    if (!(sum == Polynomial::one(vars))) {
        rep.fail("partition weights do not sum to 1 (got " + sum.str() + ")");
        return rep;
    }
    for (int r = 0; r < ncharts(); ++r)
        if (!(T(r, r) == FormalOperator::identity(K, vars))) {
            rep.fail("T_" + std::to_string(r + 1) + std::to_string(r + 1) + " != Id");
            return rep;
        }
    for (int r = 0; r < ncharts(); ++r)
        for (int s = 0; s < ncharts(); ++s) {
            if (r == s) continue;
            if (!(T(r, s).compose(T(s, r)) == FormalOperator::identity(K, vars))) {
                rep.fail("T_" + std::to_string(r + 1) + std::to_string(s + 1) +
                         " is not inverse to T_" + std::to_string(s + 1) + std::to_string(r + 1));
                return rep;
            }
        }
    return rep;
}

GluingInstance two_chart_moyal(const VarSetPtr& vars, int K, const LinDiffOp& generator,
                               const Polynomial& phi1) {
    GluingInstance G;
    G.K = K;
    G.vars = vars;
    StarProduct base = make_star_moyal_r2n(PoissonMatrix::standard_symplectic(vars->n_coords()), K);
    FormalOperator T21 = FormalOperator::exp_h(generator, K);
    FormalOperator T12 = T21.inverse();
    StarProduct transported{
        "moyal_transported", [base, T21, T12](const Polynomial& f, const Polynomial& g) {
            return T21.apply(base(T12.apply(f), T12.apply(g)));
        }};
    G.charts = {base, transported};
    G.weights = {phi1, Polynomial::one(vars) - phi1};
    G.transitions.emplace(std::make_pair(0, 0), FormalOperator::identity(K, vars));
    G.transitions.emplace(std::make_pair(1, 1), FormalOperator::identity(K, vars));
    G.transitions.emplace(std::make_pair(1, 0), T21);
    G.transitions.emplace(std::make_pair(0, 1), T12);
    return G;
}

GluingInstance identity_instance(const VarSetPtr& vars, int K, int ncharts,
                                 std::vector<Polynomial> weights) {
    GluingInstance G;
    G.K = K;
    G.vars = vars;
    StarProduct base = make_star_moyal_r2n(PoissonMatrix::standard_symplectic(vars->n_coords()), K);
    for (int r = 0; r < ncharts; ++r) G.charts.push_back(base);
    G.weights = std::move(weights);
    for (int r = 0; r < ncharts; ++r)
        for (int s = 0; s < ncharts; ++s)
            G.transitions.emplace(std::make_pair(s, r), FormalOperator::identity(K, vars));
    return G;
}

Report check_cocycle(const GluingInstance& G, int degree_bound) {
    Report rep;
    rep.summary = "cocycle conditions T_ts T_sr = T_tr up to order " + std::to_string(G.K);
    auto monos = coordinate_monomials(*G.vars, degree_bound);
    for (int t = 0; t < G.ncharts(); ++t)
        for (int s = 0; s < G.ncharts(); ++s)
            for (int r = 0; r < G.ncharts(); ++r)
                for (const auto& m : monos) {
                    Polynomial f = Polynomial::monomial(G.vars, m, Scalar(1));
                    Polynomial lhs = G.T(t, s).apply(G.T(s, r).apply(f)).truncate_h(G.K);
                    Polynomial rhs = G.T(t, r).apply(f);
                    if (lhs == rhs) continue;
                    std::ostringstream os;
                    os << "triple (t,s,r)=(" << t + 1 << ',' << s + 1 << ',' << r + 1
                       << ") fails on " << f.str();
                    rep.fail(os.str());
                    return rep;
                }
    return rep;
}

Report check_intertwiner(const GluingInstance& G, int degree_bound) {
    Report rep;
    rep.summary = "transition isomorphism property up to order " + std::to_string(G.K);
    auto monos = coordinate_monomials(*G.vars, degree_bound);
    for (int s = 0; s < G.ncharts(); ++s)
        for (int r = 0; r < G.ncharts(); ++r) {
            if (s == r) continue;
            const FormalOperator& T = G.T(s, r);
            for (const auto& ma : monos)
                for (const auto& mb : monos) {
                    Polynomial f = Polynomial::monomial(G.vars, ma, Scalar(1));
                    Polynomial g = Polynomial::monomial(G.vars, mb, Scalar(1));
                    Polynomial lhs = G.charts[static_cast<size_t>(s)](T.apply(f), T.apply(g))
                                         .truncate_h(G.K);
                    Polynomial rhs = T.apply(G.charts[static_cast<size_t>(r)](f, g));
                    if (lhs == rhs) continue;
                    std::ostringstream os;
                    os << "T_" << s + 1 << r + 1 << " fails on (" << f.str() << ", " << g.str()
                       << ")";
                    rep.fail(os.str());
                    return rep;
                }
        }
    return rep;
}

FormalOperator build_A(const GluingInstance& G, int r) {
    FormalOperator A = G.T(r, r).scaled(G.weights[static_cast<size_t>(r)]);
    for (int s = 0; s < G.ncharts(); ++s) {
        if (s == r) continue;
        A = A + G.T(s, r).scaled(G.weights[static_cast<size_t>(s)]);
    }
    return A;
}

Polynomial glued_star(const GluingInstance& G, int r, const Polynomial& f, const Polynomial& g) {
    FormalOperator A = build_A(G, r);
    FormalOperator Ainv = A.inverse();
    return A.apply(G.charts[static_cast<size_t>(r)](Ainv.apply(f), Ainv.apply(g))).truncate_h(G.K);
}

StarProduct make_star_glued(std::shared_ptr<const GluingInstance> G, int chart) {
    return {"glued", [G, chart](const Polynomial& f, const Polynomial& g) {
                return glued_star(*G, chart, f, g);
            }};
}

Report check_compatibility(const GluingInstance& G, int degree_bound) {
    Report rep;
    rep.summary = "gluing compatibility A_r T_rt = A_t up to order " + std::to_string(G.K);
    Report inv = G.validate();
    if (!inv.pass) {
        rep.fail("precondition: " + inv.witnesses.front());
        return rep;
    }
    auto monos = coordinate_monomials(*G.vars, degree_bound);
    for (int r = 0; r < G.ncharts(); ++r) {
        FormalOperator Ar = build_A(G, r);
        for (int t = 0; t < G.ncharts(); ++t) {
            FormalOperator At = build_A(G, t);
            for (const auto& m : monos) {
                Polynomial f = Polynomial::monomial(G.vars, m, Scalar(1));
                Polynomial lhs = Ar.apply(G.T(r, t).apply(f)).truncate_h(G.K);
                Polynomial rhs = At.apply(f);
                if (lhs == rhs) continue;
                std::ostringstream os;
                os << "A_" << r + 1 << " T_" << r + 1 << t + 1 << " != A_" << t + 1 << " on "
                   << f.str();
                rep.fail(os.str());
                return rep;
            }
        }
    }
    return rep;
}

Polynomial CappedEquivalence::apply(const Polynomial& f) const {
    auto basis_in = coordinate_monomials(*vars, cap_in);
    auto basis_out = coordinate_monomials(*vars, cap_out);
    std::map<Monomial, int, MonomialLess> in_index;
    for (size_t i = 0; i < basis_in.size(); ++i) in_index.emplace(basis_in[i], static_cast<int>(i));
    int h = vars->h_index();
    Polynomial out = f;
    for (int k = 1; k <= K; ++k) {
        const ScalarMatrix& Bk = B[static_cast<size_t>(k)];
        // Apply B_k to every h-slice, shifting by h^k.
        for (int l = 0; l + k <= K; ++l) {
            Polynomial slice = f.var_coefficient(h, l);
            if (slice.is_zero()) continue;
            Polynomial img(vars);
            for (const auto& [m, c] : slice.terms()) {
                auto it = in_index.find(m);
                if (it == in_index.end())
                    throw std::domain_error("CappedEquivalence: input outside the capped space");
                for (size_t row = 0; row < basis_out.size(); ++row) {
                    const Scalar& b = Bk.at(static_cast<int>(row), it->second);
                    if (b.is_zero()) continue;
                    img.add_term(basis_out[row], b * c);
                }
            }
            out += img.times_var(h, l + k);
        }
    }
    return out.truncate_h(K);
}

std::optional<CappedEquivalence> find_equivalence(const StarProduct& s1, const StarProduct& s2,
                                                  const VarSetPtr& vars, int K, int cap_in,
                                                  int cap_out) {
    auto basis_in = coordinate_monomials(*vars, cap_in);
    auto basis_out = coordinate_monomials(*vars, cap_out);
    const int M = static_cast<int>(basis_in.size());
    const int Mo = static_cast<int>(basis_out.size());
    const int h = vars->h_index();

    CappedEquivalence eq;
    eq.K = K;
    eq.cap_in = cap_in;
    eq.cap_out = cap_out;
    eq.vars = vars;
    eq.B.assign(static_cast<size_t>(K) + 1, ScalarMatrix(Mo, M));

    std::map<Monomial, int, MonomialLess> in_index;
    for (int i = 0; i < M; ++i) in_index.emplace(basis_in[static_cast<size_t>(i)], i);

    // B_k as a linear map on polynomials of degree <= cap_in.
    auto in_domain = [&](const Polynomial& f) {
        for (const auto& [m, c] : f.terms())
            if (in_index.find(m) == in_index.end()) return false;
        return true;
    };
    auto apply_B = [&](int k, const Polynomial& f) {
        Polynomial out(vars);
        for (const auto& [m, c] : f.terms()) {
            auto it = in_index.find(m);
            if (it == in_index.end())
                throw std::logic_error("find_equivalence: polynomial outside the capped space");
            for (int row = 0; row < Mo; ++row) {
                const Scalar& b = eq.B[static_cast<size_t>(k)].at(row, it->second);
                if (b.is_zero()) continue;
                out.add_term(basis_out[static_cast<size_t>(row)], b * c);
            }
        }
        return out;
    };

    // Pairs with combined degree inside the cap, and with every h-slice of
    // f *1 g still inside the domain of the capped maps.
    std::vector<std::pair<Polynomial, Polynomial>> pairs;
    for (const auto& ma : basis_in)
        for (const auto& mb : basis_in) {
            if (ma.degree() + mb.degree() > cap_in) continue;
            Polynomial f = Polynomial::monomial(vars, ma, Scalar(1));
            Polynomial g = Polynomial::monomial(vars, mb, Scalar(1));
            bool ok = true;
            Polynomial prod1 = s1(f, g);
            for (int l = 0; l <= K && ok; ++l) ok = in_domain(prod1.var_coefficient(h, l));
            if (ok) pairs.emplace_back(std::move(f), std::move(g));
        }

    for (int m = 1; m <= K; ++m) {
        // Unknowns: entries of B_m.  Equation per (pair, output monomial):
        // B_m(fg) - B_m(f) g - f B_m(g) = rhs.
        std::vector<std::vector<Scalar>> rows;
        std::vector<Scalar> rhs_vals;
        for (const auto& [f, g] : pairs) {
            Polynomial prod1 = s1(f, g);
            // known part: sum_{a+b+c=m, a<m, b<m} star2^c(B_a f, B_b g)
            //           - sum_{k<m} B_k([h^{m-k}] prod1)
            Polynomial rhs(vars);
            for (int a = 0; a < m; ++a)
                for (int b = 0; a + b <= m && b < m; ++b) {
                    int c = m - a - b;
                    Polynomial fa = a == 0 ? f : apply_B(a, f);
                    Polynomial gb = b == 0 ? g : apply_B(b, g);
                    if (fa.is_zero() || gb.is_zero()) continue;
                    rhs += s2(fa, gb).var_coefficient(h, c);
                }
            for (int k = 0; k < m; ++k) {
                Polynomial slice = prod1.var_coefficient(h, m - k);
                if (slice.is_zero()) continue;
                rhs -= k == 0 ? slice : apply_B(k, slice);
            }

            // Left side templates: unknown-linear contributions.
            // Collect per output monomial: coefficient of each unknown entry.
            std::map<Monomial, std::map<int, Scalar>, MonomialLess> lin;
            auto add_unknown = [&](const Monomial& out_mono, int row, int col, const Scalar& c) {
                lin[out_mono][row * M + col] += c;
            };
            const Monomial fg_mono = f.leading().first.times(g.leading().first);
            int col_fg = in_index.at(fg_mono);
            for (int row = 0; row < Mo; ++row)
                add_unknown(basis_out[static_cast<size_t>(row)], row, col_fg, Scalar(1));
            int col_f = in_index.at(f.leading().first);
            for (int row = 0; row < Mo; ++row)
                add_unknown(basis_out[static_cast<size_t>(row)].times(g.leading().first), row,
                            col_f, Scalar(-1));
            int col_g = in_index.at(g.leading().first);
            for (int row = 0; row < Mo; ++row)
                add_unknown(f.leading().first.times(basis_out[static_cast<size_t>(row)]), row,
                            col_g, Scalar(-1));

            // Emit one scalar equation per output monomial seen on either side.
            std::map<Monomial, Scalar, MonomialLess> rhs_by_mono;
            for (const auto& [mm, cc] : rhs.terms()) rhs_by_mono[mm] = cc;
            for (const auto& [mm, unknowns] : lin) {
                std::vector<Scalar> row(static_cast<size_t>(Mo) * M, Scalar(0));
                for (const auto& [idx, c] : unknowns) row[static_cast<size_t>(idx)] = c;
                rows.push_back(std::move(row));
                auto it = rhs_by_mono.find(mm);
                rhs_vals.push_back(it == rhs_by_mono.end() ? Scalar(0) : it->second);
                if (it != rhs_by_mono.end()) rhs_by_mono.erase(it);
            }
            for (const auto& [mm, cc] : rhs_by_mono) {
                // Monomials reached only by the known side: 0 = cc.
                rows.emplace_back(static_cast<size_t>(Mo) * M, Scalar(0));
                rhs_vals.push_back(cc);
            }
        }
        ScalarMatrix A(static_cast<int>(rows.size()), Mo * M);
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j)
                A.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        auto sol = solve_linear_system(std::move(A), std::move(rhs_vals));
        if (!sol) return std::nullopt;
        for (int row = 0; row < Mo; ++row)
            for (int col = 0; col < M; ++col)
                eq.B[static_cast<size_t>(m)].at(row, col) = (*sol)[static_cast<size_t>(row * M + col)];
    }
    return eq;
}

} // namespace starq
