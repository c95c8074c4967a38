#pragma once

#include "starq/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace starq {

class VarSet;
using VarSetPtr = std::shared_ptr<const VarSet>;

/// Ordered variable list shared by every value of a computation: coordinate
/// variables first, then the deformation parameter h, then auxiliary
/// commuting parameters (r, t_i, ...).  The declared order fixes the monomial
/// order and the canonical printing order.
class VarSet {
public:
    static VarSetPtr make(std::vector<std::string> coords,
                          std::vector<std::string> params = {});

    int size() const { return static_cast<int>(names_.size()); }
    int n_coords() const { return n_coords_; }
    int h_index() const { return n_coords_; }
    bool is_coord(int i) const { return i < n_coords_; }
    bool is_h(int i) const { return i == n_coords_; }
    bool is_param(int i) const { return i > n_coords_; }
    const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(const std::string& name) const;
    bool same(const VarSet& o) const { return names_ == o.names_; }

    /// New context with extra parameters appended after the existing ones.
    VarSetPtr with_params(const std::vector<std::string>& extra) const;

private:
    VarSet() = default;
    std::vector<std::string> names_;
    int n_coords_ = 0;
};

bool same_context(const VarSetPtr& a, const VarSetPtr& b);

/// Exponent vector over a VarSet.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars) : e_(static_cast<size_t>(nvars), 0) {}
    static Monomial unit(const VarSet& vs) { return Monomial(vs.size()); }
    static Monomial of_var(const VarSet& vs, int index, int power = 1);

    int size() const { return static_cast<int>(e_.size()); }
    int deg(int i) const { return e_[static_cast<size_t>(i)]; }
    int degree() const;
    void set(int i, int v) { e_[static_cast<size_t>(i)] = v; }
    void bump(int i, int dv) { e_[static_cast<size_t>(i)] += dv; }

    Monomial times(const Monomial& o) const;
    bool divisible_by(const Monomial& o) const;
    Monomial divided_by(const Monomial& o) const;

    bool is_unit() const;
    bool operator==(const Monomial& o) const = default;

    /// Graded lexicographic: total degree first; ties broken by the declared
    /// variable order, earlier variables more significant.
    bool less(const Monomial& o) const;

private:
    std::vector<int> e_;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.less(b); }
};

/// Exact multivariate polynomial: finite map Monomial -> Scalar with no zero
/// coefficients stored.  Immutable value semantics; all operations are pure.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, MonomialLess>;

    explicit Polynomial(VarSetPtr vars) : vars_(std::move(vars)) {}

    static Polynomial zero(VarSetPtr vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(VarSetPtr vars, const Scalar& c);
    static Polynomial one(VarSetPtr vars) { return constant(std::move(vars), Scalar(1)); }
    static Polynomial variable(VarSetPtr vars, int index);
    static Polynomial monomial(VarSetPtr vars, const Monomial& m, const Scalar& c);

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The constant value; requires is_constant().
    Scalar constant_value() const;

    int total_degree() const;      // -1 for the zero polynomial
    int coordinate_degree() const; // degree in the coordinate variables only
    int h_degree() const;
    int degree_in(int var) const;

    Scalar coefficient_of(const Monomial& m) const;
    /// Coefficient polynomial of h^k (the h variable removed from each term).
    Polynomial h_coefficient(int k) const;
    /// Coefficient polynomial of v^k: terms with deg_v == k, v removed.
    Polynomial var_coefficient(int var, int k) const;
    Polynomial truncate_h(int K) const;
    Polynomial partial(int var) const;
    Polynomial substitute(int var, const Polynomial& value) const;
    Polynomial scale(const Scalar& c) const;
    Polynomial times_var(int var, int power = 1) const;
    Polynomial pow(int k) const;
    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Every variable actually used must exist in the target context.
    Polynomial transport(const VarSetPtr& target) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);

    bool operator==(const Polynomial& o) const;

    void add_term(const Monomial& m, const Scalar& c);
    /// Leading term under the graded-lex order; requires !is_zero().
    const std::pair<const Monomial, Scalar>& leading() const;

    std::string str() const;

private:
    VarSetPtr vars_;
    TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Scalar& c, const Polynomial& p);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

struct DivModResult {
    Polynomial quot;
    Polynomial rem;
};

/// Division by a divisor that is monic in `var`: g must equal c*var^d plus
/// terms of strictly smaller var-degree, with c a nonzero constant.  The
/// remainder is the unique representative with var-degree < d.
DivModResult divmod_in_var(const Polynomial& f, const Polynomial& g, int var);

/// Exact division; throws std::domain_error when g does not divide f.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

/// Divides by h; throws std::domain_error when f has an h-free part.
Polynomial divide_by_h(const Polynomial& f);

/// All monomials in the coordinate variables of total degree <= max_degree
/// (including the unit), in increasing graded-lex order.
std::vector<Monomial> coordinate_monomials(const VarSet& vs, int max_degree);

} // namespace starq
