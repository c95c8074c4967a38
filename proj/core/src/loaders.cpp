#include "starq/loaders.hpp"

#include "starq/expr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace starq {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::string lowercased(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

LieAlgebra load_algebra(std::istream& in) {
    int dim = -1;
    std::vector<std::string> basis;
    struct BracketLine {
        int i, j, line;
        std::string rhs;
    };
    std::vector<BracketLine> brackets;
    std::string line;
    int lineno = 0;
    auto find_basis = [&](const std::string& name, int ln) {
        for (size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == name) return static_cast<int>(k);
        throw LoadError("unknown basis name '" + name + "'", ln);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto text = strip_comment(line);
        auto words = split_words(text);
        if (words.empty()) continue;
        if (words[0] == "dim") {
            if (words.size() != 2) throw LoadError("expected: dim N", lineno);
            dim = std::stoi(words[1]);
            if (dim < 1) throw LoadError("dimension must be positive", lineno);
        } else if (words[0] == "basis") {
            if (dim < 0) throw LoadError("dim must come before basis", lineno);
            if (static_cast<int>(words.size()) != dim + 1)
                throw LoadError("expected " + std::to_string(dim) + " basis names", lineno);
            basis.assign(words.begin() + 1, words.end());
        } else if (words[0] == "bracket") {
            if (basis.empty()) throw LoadError("basis must come before bracket", lineno);
            auto eq = text.find('=');
            if (eq == std::string::npos) throw LoadError("expected '=' in bracket line", lineno);
            auto head = split_words(text.substr(0, eq));
            if (head.size() != 3) throw LoadError("expected: bracket Ni Nj = expr", lineno);
            int i = find_basis(head[1], lineno);
            int j = find_basis(head[2], lineno);
            brackets.push_back({i, j, lineno, text.substr(eq + 1)});
        } else {
            throw LoadError("unknown directive '" + words[0] + "'", lineno);
        }
    }
    if (dim < 0) throw LoadError("missing dim", lineno == 0 ? 1 : lineno);
    if (basis.empty()) throw LoadError("missing basis", lineno == 0 ? 1 : lineno);

    std::vector<std::string> coords;
    for (const auto& b : basis) {
        std::string c = lowercased(b);
        if (c == "h")
            throw LoadError("basis name '" + b + "' collides with the deformation parameter h", 1);
        coords.push_back(c);
    }

    // Bracket right-hand sides are linear expressions in the basis names.
    auto bvars = VarSet::make(basis);
    std::vector<Scalar> c(static_cast<size_t>(dim) * dim * dim);
    std::vector<bool> assigned(static_cast<size_t>(dim) * dim, false);
    auto at = [&](int i, int j, int k) -> Scalar& {
        return c[static_cast<size_t>((i * dim + j) * dim + k)];
    };
    for (const auto& br : brackets) {
        Polynomial rhs(bvars);
        try {
            rhs = eval_commutative(parse_expression(br.rhs), bvars);
        } catch (const std::exception& e) {
            throw LoadError(std::string("bad bracket expression: ") + e.what(), br.line);
        }
        if (rhs.total_degree() > 1)
            throw LoadError("bracket must be linear in the basis", br.line);
        if (!rhs.coefficient_of(Monomial(bvars->size())).is_zero())
            throw LoadError("bracket has a constant term", br.line);
        std::vector<Scalar> coeffs(static_cast<size_t>(dim), Scalar(0));
        for (int k = 0; k < dim; ++k)
            coeffs[static_cast<size_t>(k)] = rhs.coefficient_of(Monomial::of_var(*bvars, k));
        if (br.i == br.j) {
            for (int k = 0; k < dim; ++k)
                if (!coeffs[static_cast<size_t>(k)].is_zero())
                    throw LoadError("antisymmetry violated: [X,X] must vanish", br.line);
            continue;
        }
        size_t fwd = static_cast<size_t>(br.i) * dim + br.j;
        size_t bwd = static_cast<size_t>(br.j) * dim + br.i;
        if (assigned[fwd]) throw LoadError("bracket specified twice", br.line);
        if (assigned[bwd]) {
            for (int k = 0; k < dim; ++k)
                if (!(at(br.j, br.i, k) == -coeffs[static_cast<size_t>(k)]))
                    throw LoadError("bracket inconsistent with the reversed pair", br.line);
        }
        for (int k = 0; k < dim; ++k) {
            at(br.i, br.j, k) = coeffs[static_cast<size_t>(k)];
            at(br.j, br.i, k) = -coeffs[static_cast<size_t>(k)];
        }
        assigned[fwd] = true;
    }

    LieAlgebra L = LieAlgebra::from_structure("custom", basis, coords, std::move(c));
    Report rep = L.validate();
    if (!rep.pass) throw LoadError(rep.witnesses.front(), 1);
    return L;
}

LieAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file: " + path);
    return load_algebra(in);
}

GluingInstance load_gluing(std::istream& in) {
    int ncharts = -1;
    int K = 3;
    VarSetPtr vars;
    std::map<int, std::string> weight_src;
    std::map<int, int> weight_line;
    struct TransLine {
        int s, r, line;
        std::string rhs;
    };
    std::vector<TransLine> transitions;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto text = strip_comment(line);
        auto words = split_words(text);
        if (words.empty()) continue;
        if (words[0] == "charts") {
            if (words.size() != 2) throw LoadError("expected: charts N", lineno);
            ncharts = std::stoi(words[1]);
            if (ncharts < 1) throw LoadError("need at least one chart", lineno);
        } else if (words[0] == "order") {
            if (words.size() != 2) throw LoadError("expected: order K", lineno);
            K = std::stoi(words[1]);
            if (K < 0) throw LoadError("order must be non-negative", lineno);
        } else if (words[0] == "vars") {
            if (words.size() < 2) throw LoadError("expected: vars q p ...", lineno);
            vars = VarSet::make({words.begin() + 1, words.end()});
        } else if (words[0] == "weight") {
            auto eq = text.find('=');
            if (eq == std::string::npos) throw LoadError("expected '=' in weight line", lineno);
            auto head = split_words(text.substr(0, eq));
            if (head.size() != 2) throw LoadError("expected: weight r = expr", lineno);
            int r = std::stoi(head[1]);
            weight_src[r] = text.substr(eq + 1);
            weight_line[r] = lineno;
        } else if (words[0] == "transition") {
            auto eq = text.find('=');
            if (eq == std::string::npos) throw LoadError("expected '=' in transition line", lineno);
            auto head = split_words(text.substr(0, eq));
            if (head.size() != 3) throw LoadError("expected: transition s r = exp(h * op)", lineno);
            transitions.push_back({std::stoi(head[1]), std::stoi(head[2]), lineno,
                                   text.substr(eq + 1)});
        } else {
            throw LoadError("unknown directive '" + words[0] + "'", lineno);
        }
    }
    if (ncharts < 1) throw LoadError("missing charts", 1);
    if (!vars) throw LoadError("missing vars", 1);
    if (vars->n_coords() % 2 != 0)
        throw LoadError("vars must list an even number of coordinates", 1);

    GluingInstance G;
    G.K = K;
    G.vars = vars;
    G.weights.assign(static_cast<size_t>(ncharts), Polynomial::zero(vars));
    for (int r = 1; r <= ncharts; ++r) {
        auto it = weight_src.find(r);
        if (it == weight_src.end()) throw LoadError("missing weight for chart " + std::to_string(r), 1);
        try {
            G.weights[static_cast<size_t>(r - 1)] =
                eval_commutative(parse_expression(it->second), vars);
        } catch (const std::exception& e) {
            throw LoadError(std::string("bad weight expression: ") + e.what(), weight_line[r]);
        }
    }
    {
        Polynomial sum(vars);
        for (const auto& w : G.weights) sum += w;
        if (!(sum == Polynomial::one(vars)))
            throw LoadError("weights do not sum to 1 (got " + sum.str() + ")", 1);
    }

    // Transitions are given against chart 1: T_r1 = exp(h * op).
    std::map<int, FormalOperator> T_r1;
    for (const auto& t : transitions) {
        if (t.r != 1) throw LoadError("transitions must target chart 1", t.line);
        if (t.s < 2 || t.s > ncharts) throw LoadError("bad chart index", t.line);
        // Syntax: exp(h * <operator expression>)
        std::string rhs = t.rhs;
        auto first = rhs.find_first_not_of(" \t");
        if (first == std::string::npos || rhs.compare(first, 4, "exp(") != 0)
            throw LoadError("transition must have the form exp(h * ...)", t.line);
        auto close = rhs.rfind(')');
        if (close == std::string::npos || close <= first + 4)
            throw LoadError("transition must have the form exp(h * ...)", t.line);
        std::string inner = rhs.substr(first + 4, close - first - 4);
        auto star = inner.find('*');
        auto hpart = inner.substr(0, star == std::string::npos ? inner.size() : star);
        auto hw = split_words(hpart);
        if (star == std::string::npos || hw.size() != 1 || hw[0] != "h")
            throw LoadError("transition must have the form exp(h * ...)", t.line);
        LinDiffOp gen(vars);
        try {
            gen = parse_operator(inner.substr(star + 1), vars);
        } catch (const std::exception& e) {
            throw LoadError(std::string("bad operator expression: ") + e.what(), t.line);
        }
        T_r1.emplace(t.s, FormalOperator::exp_h(gen, K));
    }
    for (int r = 2; r <= ncharts; ++r)
        if (T_r1.find(r) == T_r1.end())
            throw LoadError("missing transition " + std::to_string(r) + " 1", 1);

    StarProduct base = make_star_moyal_r2n(PoissonMatrix::standard_symplectic(vars->n_coords()), K);
    G.charts.assign(static_cast<size_t>(ncharts), base);
    for (int r = 0; r < ncharts; ++r)
        G.transitions.emplace(std::make_pair(r, r), FormalOperator::identity(K, vars));
    for (int r = 2; r <= ncharts; ++r) {
        const FormalOperator& Tr1 = T_r1.at(r);
        FormalOperator T1r = Tr1.inverse();
        StarProduct transported{
            "moyal_transported", [base, Tr1, T1r](const Polynomial& f, const Polynomial& g) {
                return Tr1.apply(base(T1r.apply(f), T1r.apply(g)));
            }};
        G.charts[static_cast<size_t>(r - 1)] = transported;
        G.transitions.emplace(std::make_pair(r - 1, 0), Tr1);
        G.transitions.emplace(std::make_pair(0, r - 1), T1r);
    }
    // Cross transitions through chart 1: T_sr = T_s1 T_1r.
    for (int s = 2; s <= ncharts; ++s)
        for (int r = 2; r <= ncharts; ++r) {
            if (s == r) continue;
            G.transitions.emplace(std::make_pair(s - 1, r - 1),
                                  T_r1.at(s).compose(T_r1.at(r).inverse()));
        }
    return G;
}

GluingInstance load_gluing_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gluing file: " + path);
    return load_gluing(in);
}

} // namespace starq
