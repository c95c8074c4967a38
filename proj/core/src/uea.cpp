#include "starq/uea.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace starq {

EnvElem EnvElem::unit(VarSetPtr vars) {
    EnvElem e(vars);
    e.add_term(Word{}, Polynomial::one(vars));
    return e;
}

EnvElem EnvElem::generator(VarSetPtr vars, int index) {
    EnvElem e(vars);
    e.add_term(Word{index}, Polynomial::one(vars));
    return e;
}

EnvElem EnvElem::word(VarSetPtr vars, Word w) {
    EnvElem e(vars);
    e.add_term(std::move(w), Polynomial::one(vars));
    return e;
}

bool EnvElem::is_normal() const {
    for (const auto& [w, c] : terms_)
        if (!std::is_sorted(w.begin(), w.end())) return false;
    return true;
}

int EnvElem::max_word_length() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
}

void EnvElem::add_term(const Word& w, const Polynomial& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial EnvElem::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Polynomial::zero(vars_) : it->second;
}

EnvElem EnvElem::operator-() const {
    EnvElem out(vars_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

EnvElem& EnvElem::operator+=(const EnvElem& o) {
    if (!same_context(vars_, o.vars_))
        throw std::invalid_argument("EnvElem: mismatched variable contexts");
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

EnvElem& EnvElem::operator-=(const EnvElem& o) {
    if (!same_context(vars_, o.vars_))
        throw std::invalid_argument("EnvElem: mismatched variable contexts");
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

EnvElem EnvElem::scale(const Polynomial& c) const {
    EnvElem out(vars_);
    for (const auto& [w, k] : terms_) out.add_term(w, k * c);
    return out;
}

EnvElem EnvElem::scale(const Scalar& c) const {
    EnvElem out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [w, k] : terms_) out.terms_.emplace(w, k.scale(c));
    return out;
}

bool EnvElem::operator==(const EnvElem& o) const {
    return same_context(vars_, o.vars_) && terms_ == o.terms_;
}

std::string EnvElem::str(const std::vector<std::string>& gen_names) const {
    if (terms_.empty()) return "0";
    // Longest words first, lexicographic within a length.
    std::vector<const std::pair<const Word, Polynomial>*> items;
    items.reserve(terms_.size());
    for (const auto& t : terms_) items.push_back(&t);
    std::sort(items.begin(), items.end(), [](auto* a, auto* b) {
        if (a->first.size() != b->first.size()) return a->first.size() > b->first.size();
        return a->first < b->first;
    });
    std::string out;
    bool first = true;
    for (auto* t : items) {
        const Word& w = t->first;
        const Polynomial& c = t->second;
        // Pull a plain sign out of single-term coefficients for readability.
        bool neg = false;
        std::string coeff;
        if (c.terms().size() == 1) {
            const auto& [m, s] = *c.terms().begin();
            Scalar mag = s;
            if (s.is_negative_real()) {
                neg = true;
                mag = -s;
            }
            Polynomial unit_term = Polynomial::monomial(c.vars(), m, mag);
            coeff = unit_term.str();
            if (coeff == "1" && !w.empty()) coeff.clear();
        } else {
            coeff = "(" + c.str() + ")";
        }
        if (first) {
            if (neg) out += '-';
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string wordpart;
        size_t k = 0;
        while (k < w.size()) {
            size_t j = k;
            while (j < w.size() && w[j] == w[k]) ++j;
            if (!wordpart.empty()) wordpart += '*';
            wordpart += gen_names[static_cast<size_t>(w[k])];
            if (j - k > 1) wordpart += "^" + std::to_string(j - k);
            k = j;
        }
        if (wordpart.empty()) {
            out += coeff.empty() ? "1" : coeff;
        } else if (coeff.empty()) {
            out += wordpart;
        } else {
            out += coeff + "*" + wordpart;
        }
    }
    return out;
}

EnvElem pbw_normalize(const EnvElem& a, const LieAlgebra& L) {
    EnvElem out(a.vars());
    const int h = a.vars()->h_index();
    // Worklist keyed by word so duplicate descendants merge early; longest
    // words processed first.
    std::map<Word, Polynomial, WordLess> pending(a.terms().begin(), a.terms().end());
    while (!pending.empty()) {
        auto it = std::prev(pending.end());
        Word w = it->first;
        Polynomial c = it->second;
        pending.erase(it);
        if (c.is_zero()) continue;
        size_t inv = w.size();
        for (size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] > w[k + 1]) {
                inv = k;
                break;
            }
        if (inv == w.size()) {
            out.add_term(w, c);
            continue;
        }
        int gi = w[inv], gj = w[inv + 1];
        Word swapped = w;
        std::swap(swapped[inv], swapped[inv + 1]);
        {
            auto [jt, inserted] = pending.emplace(swapped, c);
            if (!inserted) jt->second += c;
        }
        Polynomial ch = c.times_var(h);
        for (int k = 0; k < L.dim(); ++k) {
            const Scalar& s = L.c(gi, gj, k);
            if (s.is_zero()) continue;
            Word shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(inv));
            shorter.push_back(k);
            shorter.insert(shorter.end(), w.begin() + static_cast<long>(inv) + 2, w.end());
            auto [jt, inserted] = pending.emplace(std::move(shorter), ch.scale(s));
            if (!inserted) jt->second += ch.scale(s);
        }
    }
    return out;
}

EnvElem ue_mul(const EnvElem& a, const EnvElem& b, const LieAlgebra& L) {
    if (!same_context(a.vars(), b.vars()))
        throw std::invalid_argument("ue_mul: mismatched variable contexts");
    EnvElem raw(a.vars());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            raw.add_term(w, ca * cb);
        }
    return pbw_normalize(raw, L);
}

EnvElem ue_commutator(const EnvElem& a, const EnvElem& b, const LieAlgebra& L) {
    return ue_mul(a, b, L) - ue_mul(b, a, L);
}

std::optional<std::pair<int, EnvElem>> central_witness(const EnvElem& a, const LieAlgebra& L) {
    for (int i = 0; i < L.dim(); ++i) {
        EnvElem gi = EnvElem::generator(a.vars(), i);
        EnvElem comm = ue_commutator(a, gi, L);
        if (!comm.is_zero()) return std::make_pair(i, std::move(comm));
    }
    return std::nullopt;
}

bool is_central(const EnvElem& a, const LieAlgebra& L) { return !central_witness(a, L); }

std::optional<std::pair<int, int>> designated_leading(const EnvElem& C) {
    std::optional<std::pair<int, int>> best;
    for (const auto& [w, c] : C.terms()) {
        if (w.empty()) continue;
        bool pure = std::all_of(w.begin(), w.end(), [&](int g) { return g == w[0]; });
        if (!pure) continue;
        if (!(c.is_constant() && c.constant_value().is_one())) continue;
        int g = w[0];
        int d = static_cast<int>(w.size());
        bool dominates = true;
        for (const auto& [w2, c2] : C.terms()) {
            if (w2 == w) continue;
            int count = static_cast<int>(std::count(w2.begin(), w2.end(), g));
            if (count >= d) {
                dominates = false;
                break;
            }
        }
        if (!dominates) continue;
        if (!best || g > best->first) best = std::make_pair(g, d);
    }
    return best;
}

EnvElem ideal_reduce(const EnvElem& a, const EnvElem& C, const Polynomial& c,
                     const LieAlgebra& L) {
    if (auto w = central_witness(C, L)) {
        throw std::invalid_argument("ideal_reduce: C is not central (fails against generator " +
                                    L.basis()[static_cast<size_t>(w->first)] + ")");
    }
    auto lead = designated_leading(C);
    if (!lead)
        throw std::invalid_argument("ideal_reduce: C has no designated pure-power leading monomial");
    const auto [g, d] = *lead;
    // Replacement for g^d: c - (C - g^d).
    EnvElem repl(a.vars());
    repl.add_term(Word{}, c);
    for (const auto& [w, coeff] : C.terms()) {
        if (static_cast<int>(w.size()) == d &&
            std::all_of(w.begin(), w.end(), [&](int x) { return x == g; }))
            continue;
        repl.add_term(w, -coeff);
    }

    EnvElem x = pbw_normalize(a, L);
    for (;;) {
        const auto& terms = x.terms();
        auto hit = terms.end();
        for (auto it = terms.begin(); it != terms.end(); ++it)
            if (std::count(it->first.begin(), it->first.end(), g) >= d) hit = it;
        if (hit == terms.end()) return x;
        Word w = hit->first;
        Polynomial coeff = hit->second;
        // Sorted word: the g block is contiguous.
        auto lo = std::lower_bound(w.begin(), w.end(), g);
        Word prefix(w.begin(), lo + (std::count(w.begin(), w.end(), g) - d));
        Word suffix(std::upper_bound(w.begin(), w.end(), g), w.end());
        EnvElem replaced = ue_mul(EnvElem::word(x.vars(), prefix), repl, L);
        if (!suffix.empty()) replaced = ue_mul(replaced, EnvElem::word(x.vars(), suffix), L);
        x -= EnvElem::word(x.vars(), w).scale(coeff);
        x += replaced.scale(coeff);
    }
}

EnvElem standard_order(const Polynomial& f, const LieAlgebra& L) {
    const auto& vars = f.vars();
    std::vector<int> idx(static_cast<size_t>(L.dim()));
    for (int k = 0; k < L.dim(); ++k) {
        auto it = vars->index_of(L.coords()[static_cast<size_t>(k)]);
        if (!it) throw std::invalid_argument("standard_order: coordinate missing in context");
        idx[static_cast<size_t>(k)] = *it;
    }
    EnvElem out(vars);
    for (const auto& [m, c] : f.terms()) {
        Word w;
        Monomial rest = m;
        for (int k = 0; k < L.dim(); ++k) {
            int e = m.deg(idx[static_cast<size_t>(k)]);
            for (int j = 0; j < e; ++j) w.push_back(k);
            rest.set(idx[static_cast<size_t>(k)], 0);
        }
        out.add_term(w, Polynomial::monomial(vars, rest, c));
    }
    return out;
}

} // namespace starq
