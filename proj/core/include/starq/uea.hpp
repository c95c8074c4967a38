#pragma once

#include "starq/liealg.hpp"
#include "starq/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starq {

/// Generator word in U_h: a sequence of basis indices.  The empty word is
/// the unit.
using Word = std::vector<int>;

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Element of the h-scaled universal enveloping algebra: finite map from
/// words to polynomial coefficients (in h and auxiliary parameters; the
/// coordinate variables of the shared context never appear in coefficients).
class EnvElem {
public:
    using TermMap = std::map<Word, Polynomial, WordLess>;

    explicit EnvElem(VarSetPtr vars) : vars_(std::move(vars)) {}
    static EnvElem zero(VarSetPtr vars) { return EnvElem(std::move(vars)); }
    static EnvElem unit(VarSetPtr vars);
    static EnvElem generator(VarSetPtr vars, int index);
    static EnvElem word(VarSetPtr vars, Word w);

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// All stored words weakly increasing (PBW monomials).
    bool is_normal() const;
    int max_word_length() const;

    void add_term(const Word& w, const Polynomial& c);
    Polynomial coefficient(const Word& w) const;

    EnvElem operator-() const;
    EnvElem& operator+=(const EnvElem& o);
    EnvElem& operator-=(const EnvElem& o);
    EnvElem scale(const Polynomial& c) const;
    EnvElem scale(const Scalar& c) const;
    /// Applies f to every coefficient (substitutions, truncations, ...).
    template <typename F>
    EnvElem map_coefficients(F&& f) const {
        EnvElem out(vars_);
        for (const auto& [w, c] : terms_) out.add_term(w, f(c));
        return out;
    }

    bool operator==(const EnvElem& o) const;

    std::string str(const std::vector<std::string>& gen_names) const;

private:
    VarSetPtr vars_;
    TermMap terms_;
};

inline EnvElem operator+(EnvElem a, const EnvElem& b) { return a += b; }
inline EnvElem operator-(EnvElem a, const EnvElem& b) { return a -= b; }

/// Rewrites every adjacent inversion X_j X_i (j > i) as
/// X_i X_j + h * sum_k c_ji^k X_k until all words are weakly increasing.
/// Deterministic (leftmost inversion first) and strategy independent.
EnvElem pbw_normalize(const EnvElem& a, const LieAlgebra& L);

/// Concatenation extended bilinearly, then PBW normalization.
EnvElem ue_mul(const EnvElem& a, const EnvElem& b, const LieAlgebra& L);

/// a*b - b*a, normalized.
EnvElem ue_commutator(const EnvElem& a, const EnvElem& b, const LieAlgebra& L);

/// First generator that fails to commute with a, together with the nonzero
/// commutator; nullopt when a is central.
std::optional<std::pair<int, EnvElem>> central_witness(const EnvElem& a, const LieAlgebra& L);
bool is_central(const EnvElem& a, const LieAlgebra& L);

/// The pure power g^d carried by a central element C whose remaining words
/// all have strictly smaller g-count; the largest such generator is chosen.
/// Requires the g^d coefficient to be the constant 1.
std::optional<std::pair<int, int>> designated_leading(const EnvElem& C);

/// Canonical representative of a modulo the two-sided ideal (C - c), for
/// central C with a designated pure-power leading monomial.  Throws
/// std::invalid_argument when C is not central or has no usable leading
/// power.
EnvElem ideal_reduce(const EnvElem& a, const EnvElem& C, const Polynomial& c,
                     const LieAlgebra& L);

/// Standard-ordering map: each commutative monomial x1^a1...xn^an goes to
/// the sorted word X1^a1...Xn^an; h and parameters stay in the coefficient.
EnvElem standard_order(const Polynomial& f, const LieAlgebra& L);

} // namespace starq
