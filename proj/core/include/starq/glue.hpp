#pragma once

#include "starq/report.hpp"
#include "starq/star.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace starq {

/// Linear differential operator with polynomial coefficients: finite map
/// from derivative multi-indices (over the coordinate variables) to
/// coefficient polynomials.  Coefficients act by multiplication on the left
/// of the derivatives.
class LinDiffOp {
public:
    using TermMap = std::map<Monomial, Polynomial, MonomialLess>;

    explicit LinDiffOp(VarSetPtr vars) : vars_(std::move(vars)) {}
    static LinDiffOp identity(VarSetPtr vars);
    static LinDiffOp derivative(VarSetPtr vars, const Monomial& order);

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_identity() const;

    void add_term(const Monomial& order, const Polynomial& coeff);

    Polynomial apply(const Polynomial& f) const;
    LinDiffOp compose(const LinDiffOp& other) const; // this after other
    LinDiffOp scaled(const Polynomial& coeff) const;
    LinDiffOp scaled(const Scalar& c) const;
    LinDiffOp& operator+=(const LinDiffOp& o);
    bool operator==(const LinDiffOp& o) const;

private:
    VarSetPtr vars_;
    TermMap terms_;
};

/// Truncated formal series D_0 + h D_1 + ... + h^K D_K of differential
/// operators.  In scope D_0 is always the identity, so the operator is
/// invertible order by order.
class FormalOperator {
public:
    FormalOperator(int K, VarSetPtr vars);
    static FormalOperator identity(int K, VarSetPtr vars);
    /// exp(h G) truncated: component m is G^m / m!.
    static FormalOperator exp_h(const LinDiffOp& G, int K);

    int order() const { return K_; }
    const VarSetPtr& vars() const { return vars_; }
    const LinDiffOp& component(int k) const { return comp_[static_cast<size_t>(k)]; }
    void set_component(int k, LinDiffOp op);

    Polynomial apply(const Polynomial& f) const; // truncated at order K
    FormalOperator compose(const FormalOperator& other) const;
    FormalOperator inverse() const; // requires D_0 == Id
    FormalOperator scaled(const Polynomial& coeff) const;
    FormalOperator operator+(const FormalOperator& o) const;
    bool operator==(const FormalOperator& o) const;

private:
    int K_;
    VarSetPtr vars_;
    std::vector<LinDiffOp> comp_;
};

/// Chart-local star products glued through a partition of unity and
/// transition isomorphisms.  All charts share one global coordinate space.
struct GluingInstance {
    int K;
    VarSetPtr vars;
    std::vector<StarProduct> charts;
    std::vector<Polynomial> weights;
    std::map<std::pair<int, int>, FormalOperator> transitions; // (s, r) -> T_sr

    int ncharts() const { return static_cast<int>(charts.size()); }
    const FormalOperator& T(int s, int r) const;
    /// Sum of weights equals one exactly; T_rr = Id; T_rs = T_sr^{-1} up to K.
    Report validate() const;
};

/// Two charts over one Moyal plane: chart 1 carries the truncated standard
/// Moyal product, T_21 = exp(h G), chart 2 the transported product.
GluingInstance two_chart_moyal(const VarSetPtr& vars, int K, const LinDiffOp& generator,
                               const Polynomial& phi1);

/// All transitions identity, all charts the same truncated Moyal product.
GluingInstance identity_instance(const VarSetPtr& vars, int K, int ncharts,
                                 std::vector<Polynomial> weights);

Report check_cocycle(const GluingInstance& G, int degree_bound);
Report check_intertwiner(const GluingInstance& G, int degree_bound);
/// A_r = phi_r Id + sum_{s != r} phi_s T_sr.
FormalOperator build_A(const GluingInstance& G, int r);
/// A_r( A_r^{-1}(f) *_r A_r^{-1}(g) ), truncated at order K.
Polynomial glued_star(const GluingInstance& G, int r, const Polynomial& f, const Polynomial& g);
StarProduct make_star_glued(std::shared_ptr<const GluingInstance> G, int chart);
/// A_r T_rt = A_t up to order K; requires the cocycle conditions.
Report check_compatibility(const GluingInstance& G, int degree_bound);

/// Degree-capped order-by-order search for an equivalence B with
/// B(f *1 g) = B(f) *2 B(g) mod h^{K+1} and B = Id + h B_1 + ...  The B_k
/// are rational matrices from the degree <= cap_in monomial space into the
/// degree <= cap_out space.  Reported as found/not-found, never guessed.
struct CappedEquivalence {
    int K = 0;
    int cap_in = 0;
    int cap_out = 0;
    VarSetPtr vars;
    std::vector<ScalarMatrix> B; // B[1..K]; index 0 unused (identity)
    Polynomial apply(const Polynomial& f) const;
};
std::optional<CappedEquivalence> find_equivalence(const StarProduct& s1, const StarProduct& s2,
                                                  const VarSetPtr& vars, int K, int cap_in,
                                                  int cap_out);

} // namespace starq
