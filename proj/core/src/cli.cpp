#include "starq/cli.hpp"

#include "starq/expr.hpp"
#include "starq/fuzzy.hpp"
#include "starq/loaders.hpp"
#include "starq/orbit.hpp"
#include "starq/star.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <memory>
#include <ostream>
#include <sstream>

namespace starq {

namespace {

using nlohmann::json;

struct Output {
    std::string command;
    std::string status = "ok"; // ok | fail | error
    json result = json::object();
    json witnesses = json::array();
    std::vector<std::string> text; // text-mode lines

    void render(bool as_json, std::ostream& out) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["status"] = status;
            j["result"] = result;
            j["witnesses"] = witnesses;
            out << j.dump(2) << '\n';
        } else {
            for (const auto& line : text) out << line << '\n';
        }
    }
};

struct CommonOpts {
    std::string algebra = "su2";
    std::vector<std::string> params;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_algebra = true) {
    if (with_algebra)
        cmd->add_option("--algebra", c.algebra, "builtin name (heisenberg|su2|sl2) or file path");
    cmd->add_option("--params", c.params, "extra symbolic parameters (e.g. r)");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
}

LieAlgebra resolve_algebra(const std::string& spec) {
    if (auto b = LieAlgebra::builtin(spec)) return *b;
    return load_algebra_file(spec);
}

Polynomial parse_poly(const std::string& src, const VarSetPtr& vars) {
    return eval_commutative(parse_expression(src), vars);
}

LevelKind parse_level(const std::string& s) {
    if (s == "plain") return LevelKind::plain;
    if (s == "shifted") return LevelKind::shifted;
    throw EvalError("unknown level kind '" + s + "'");
}

/// Ensures the radius expression's symbols are declared; "r" is the default
/// and must be passed via --params r to enter the context.
Polynomial parse_radius(const std::string& src, const VarSetPtr& vars) {
    return parse_poly(src, vars);
}

struct StarSetup {
    StarProduct product;
    VarSetPtr vars;
    std::shared_ptr<WeylContext> ctx; // set for weyl/psi-p
    std::shared_ptr<OrbitData> orbit; // set for psi-p/quotient
};

int parse_spin(const std::string& s) {
    Scalar j = Scalar::parse(s);
    Scalar twoj = j * Scalar(2);
    if (!twoj.is_real() || denominator(twoj.re()) != 1 || twoj.re() < 0)
        throw EvalError("spin must be a non-negative half-integer, got '" + s + "'");
    return static_cast<int>(numerator(twoj.re()).convert_to<long>());
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"starq: exact star products on duals of Lie algebras"};
    app.require_subcommand(1);

    // ---- bracket ----------------------------------------------------------
    auto* cmd_bracket = app.add_subcommand("bracket", "Kirillov Poisson bracket {f, g}");
    CommonOpts br_opts;
    std::string br_f, br_g;
    add_common(cmd_bracket, br_opts);
    cmd_bracket->add_option("f", br_f)->required();
    cmd_bracket->add_option("g", br_g)->required();

    // ---- star -------------------------------------------------------------
    auto* cmd_star = app.add_subcommand("star", "star product f * g");
    CommonOpts st_opts;
    std::string st_f, st_g, st_product = "weyl", st_level = "plain", st_radius = "r";
    std::string st_instance;
    int st_order = 3, st_chart = 1;
    std::vector<std::string> st_vars;
    add_common(cmd_star, st_opts);
    cmd_star->add_option("--product", st_product, "weyl|moyal-heis|moyal-r2n|psi-p|quotient|glued")
        ->check(CLI::IsMember({"weyl", "moyal-heis", "moyal-r2n", "psi-p", "quotient", "glued"}));
    cmd_star->add_option("--level", st_level, "plain|shifted");
    cmd_star->add_option("--radius", st_radius, "radius expression (default r)");
    cmd_star->add_option("--order", st_order, "jet order for glued products");
    cmd_star->add_option("--instance", st_instance, "gluing instance file");
    cmd_star->add_option("--chart", st_chart, "chart for glued products (1-based)");
    cmd_star->add_option("--vars", st_vars, "coordinates for moyal-r2n (default q p)");
    cmd_star->add_option("f", st_f)->required();
    cmd_star->add_option("g", st_g)->required();

    // ---- weyl / unweyl / normalize -----------------------------------------
    auto* cmd_weyl = app.add_subcommand("weyl", "Weyl symmetrization W(f)");
    CommonOpts wy_opts;
    std::string wy_f;
    add_common(cmd_weyl, wy_opts);
    cmd_weyl->add_option("f", wy_f)->required();

    auto* cmd_unweyl = app.add_subcommand("unweyl", "inverse Weyl map of an enveloping element");
    CommonOpts uw_opts;
    std::string uw_a;
    add_common(cmd_unweyl, uw_opts);
    cmd_unweyl->add_option("a", uw_a)->required();

    auto* cmd_normalize = app.add_subcommand("normalize", "PBW normal form of an enveloping element");
    CommonOpts nm_opts;
    std::string nm_a;
    add_common(cmd_normalize, nm_opts);
    cmd_normalize->add_option("a", nm_a)->required();

    // ---- reduce -------------------------------------------------------------
    auto* cmd_reduce = app.add_subcommand("reduce", "reduce mod the orbit ideal (P - c(h)), su2");
    CommonOpts rd_opts;
    std::string rd_a, rd_level = "plain", rd_radius = "r";
    add_common(cmd_reduce, rd_opts);
    cmd_reduce->add_option("--level", rd_level, "plain|shifted");
    cmd_reduce->add_option("--radius", rd_radius, "radius expression (default r)");
    cmd_reduce->add_option("a", rd_a)->required();

    // ---- harm ---------------------------------------------------------------
    auto* cmd_harm = app.add_subcommand("harm", "harmonic decomposition f = sum p^r f_r (su2)");
    CommonOpts hm_opts;
    std::string hm_f;
    add_common(cmd_harm, hm_opts);
    cmd_harm->add_option("f", hm_f)->required();

    // ---- tangential -----------------------------------------------------------
    auto* cmd_tang = app.add_subcommand("tangential", "ideal-membership test for a star product");
    CommonOpts tg_opts;
    std::string tg_product = "weyl", tg_ideal, tg_level = "plain", tg_radius = "r";
    int tg_degree = 3, tg_horder = 3;
    add_common(cmd_tang, tg_opts);
    cmd_tang->add_option("--product", tg_product, "weyl|moyal-heis|psi-p");
    cmd_tang->add_option("--ideal", tg_ideal, "ideal generator expression")->required();
    cmd_tang->add_option("--degree", tg_degree, "monomial degree bound");
    cmd_tang->add_option("--h-order", tg_horder, "h-order bound");
    cmd_tang->add_option("--level", tg_level, "plain|shifted (psi-p)");
    cmd_tang->add_option("--radius", tg_radius, "radius expression (psi-p)");

    // ---- fuzzy -----------------------------------------------------------------
    auto* cmd_fuzzy = app.add_subcommand("fuzzy", "spin-j fuzzy sphere representation");
    cmd_fuzzy->set_help_flag("--help", "print help"); // frees -h for the --h value option
    CommonOpts fz_opts;
    std::string fz_spin, fz_h = "1";
    int fz_cap = -1;
    bool fz_matrices = false;
    add_common(cmd_fuzzy, fz_opts, /*with_algebra=*/false);
    cmd_fuzzy->add_option("--spin", fz_spin, "spin j (half-integer, e.g. 1/2)")->required();
    cmd_fuzzy->add_option("--h", fz_h, "numeric deformation parameter");
    cmd_fuzzy->add_option("--degree-cap", fz_cap, "degree cap for the image dimension (default 2j)");
    cmd_fuzzy->add_flag("--print-matrices", fz_matrices, "print the generator matrices");

    // ---- glue-demo ---------------------------------------------------------------
    auto* cmd_glue = app.add_subcommand("glue-demo", "run the gluing checks on an instance");
    CommonOpts gl_opts;
    std::string gl_instance;
    int gl_order = 3, gl_degree = 3;
    add_common(cmd_glue, gl_opts, /*with_algebra=*/false);
    cmd_glue->add_option("--instance", gl_instance, "gluing instance file (default: builtin)");
    cmd_glue->add_option("--order", gl_order, "jet order for the builtin instance");
    cmd_glue->add_option("--degree", gl_degree, "monomial degree bound");

    // ---- check ---------------------------------------------------------------------
    auto* cmd_check = app.add_subcommand("check", "named property suites");
    CommonOpts ck_opts;
    std::string ck_suite, ck_product = "weyl";
    int ck_degree = 3;
    add_common(cmd_check, ck_opts);
    cmd_check->add_option("suite", ck_suite, "semiclassical|poisson|intertwining")->required();
    cmd_check->add_option("--degree", ck_degree, "degree bound");
    cmd_check->add_option("--product", ck_product, "product for the semiclassical suite");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    Output o;
    bool as_json = false;
    try {
        if (cmd_bracket->parsed()) {
            o.command = "bracket";
            as_json = br_opts.format == "json";
            LieAlgebra L = resolve_algebra(br_opts.algebra);
            auto vars = L.dual_vars(br_opts.params);
            Polynomial f = parse_poly(br_f, vars);
            Polynomial g = parse_poly(br_g, vars);
            Polynomial b = L.kirillov(f, g);
            o.result["algebra"] = L.name();
            o.result["bracket"] = b.str();
            o.text.push_back(b.str());
        } else if (cmd_star->parsed()) {
            o.command = "star";
            as_json = st_opts.format == "json";
            if (st_product == "moyal-r2n") {
                std::vector<std::string> coords =
                    st_vars.empty() ? std::vector<std::string>{"q", "p"} : st_vars;
                auto vars = VarSet::make(coords, st_opts.params);
                Polynomial f = parse_poly(st_f, vars);
                Polynomial g = parse_poly(st_g, vars);
                Polynomial r = moyal_r2n(f, g, PoissonMatrix::standard_symplectic(vars->n_coords()));
                o.result["product"] = "moyal_r2n";
                o.result["value"] = r.str();
                o.text.push_back(r.str());
            } else if (st_product == "glued") {
                GluingInstance G = st_instance.empty()
                                       ? [&] {
                                             auto vars = VarSet::make({"q", "p"}, st_opts.params);
                                             Monomial d2(vars->size());
                                             d2.set(0, 1);
                                             d2.set(1, 1);
                                             return two_chart_moyal(vars, st_order,
                                                                    LinDiffOp::derivative(vars, d2),
                                                                    Polynomial::variable(vars, 0));
                                         }()
                                       : load_gluing_file(st_instance);
                Polynomial f = parse_poly(st_f, G.vars);
                Polynomial g = parse_poly(st_g, G.vars);
                if (st_chart < 1 || st_chart > G.ncharts()) throw EvalError("bad chart index");
                Polynomial r = glued_star(G, st_chart - 1, f, g);
                o.result["product"] = "glued";
                o.result["chart"] = st_chart;
                o.result["value"] = r.str();
                o.text.push_back(r.str());
            } else {
                LieAlgebra L = resolve_algebra(st_opts.algebra);
                auto params = st_opts.params;
                auto vars = L.dual_vars(params);
                Polynomial f = parse_poly(st_f, vars);
                Polynomial g = parse_poly(st_g, vars);
                if (st_product == "weyl") {
                    WeylContext ctx(L, vars);
                    Polynomial r = star_S(f, g, ctx);
                    o.result["product"] = "weyl_S";
                    o.result["value"] = r.str();
                    o.text.push_back(r.str());
                } else if (st_product == "moyal-heis") {
                    Polynomial r = moyal_heisenberg(f, g);
                    o.result["product"] = "moyal_heis";
                    o.result["value"] = r.str();
                    o.text.push_back(r.str());
                } else if (st_product == "psi-p" || st_product == "quotient") {
                    if (L.name() != "su2") throw EvalError("orbit products require --algebra su2");
                    WeylContext ctx(L, vars);
                    OrbitData O = OrbitData::su2(vars, parse_radius(st_radius, vars),
                                                 parse_level(st_level));
                    if (st_product == "psi-p") {
                        Polynomial r = star_P(f, g, O, ctx);
                        o.result["product"] = "psi_P";
                        o.result["value"] = r.str();
                        o.text.push_back(r.str());
                    } else {
                        QuotientElement qa = orbit_class(f, O, ctx);
                        QuotientElement qb = orbit_class(g, O, ctx);
                        QuotientElement qc = star_PTheta(qa, qb, O);
                        o.result["product"] = "quotient";
                        o.result["value"] = qc.rep.str(L.basis());
                        o.text.push_back(qc.rep.str(L.basis()));
                    }
                }
            }
        } else if (cmd_weyl->parsed()) {
            o.command = "weyl";
            as_json = wy_opts.format == "json";
            LieAlgebra L = resolve_algebra(wy_opts.algebra);
            auto vars = L.dual_vars(wy_opts.params);
            WeylContext ctx(L, vars);
            EnvElem a = ctx.sym(parse_poly(wy_f, vars));
            o.result["element"] = a.str(L.basis());
            o.text.push_back(a.str(L.basis()));
        } else if (cmd_unweyl->parsed()) {
            o.command = "unweyl";
            as_json = uw_opts.format == "json";
            LieAlgebra L = resolve_algebra(uw_opts.algebra);
            auto vars = L.dual_vars(uw_opts.params);
            WeylContext ctx(L, vars);
            EnvElem a = eval_word(parse_expression(uw_a), L, vars);
            Polynomial f = ctx.inv(pbw_normalize(a, L));
            o.result["polynomial"] = f.str();
            o.text.push_back(f.str());
        } else if (cmd_normalize->parsed()) {
            o.command = "normalize";
            as_json = nm_opts.format == "json";
            LieAlgebra L = resolve_algebra(nm_opts.algebra);
            auto vars = L.dual_vars(nm_opts.params);
            EnvElem a = pbw_normalize(eval_word(parse_expression(nm_a), L, vars), L);
            o.result["normal_form"] = a.str(L.basis());
            o.text.push_back(a.str(L.basis()));
        } else if (cmd_reduce->parsed()) {
            o.command = "reduce";
            as_json = rd_opts.format == "json";
            LieAlgebra L = resolve_algebra(rd_opts.algebra);
            if (L.name() != "su2") throw EvalError("reduce requires --algebra su2");
            auto vars = L.dual_vars(rd_opts.params);
            OrbitData O = OrbitData::su2(vars, parse_radius(rd_radius, vars), parse_level(rd_level));
            EnvElem a = eval_word(parse_expression(rd_a), L, vars);
            QuotientElement q = orbit_class(a, O);
            o.result["reduced"] = q.rep.str(L.basis());
            o.text.push_back(q.rep.str(L.basis()));
        } else if (cmd_harm->parsed()) {
            o.command = "harm";
            as_json = hm_opts.format == "json";
            LieAlgebra L = resolve_algebra(hm_opts.algebra);
            if (L.name() != "su2") throw EvalError("harm requires --algebra su2");
            auto vars = L.dual_vars(hm_opts.params);
            Polynomial f = parse_poly(hm_f, vars);
            auto decomp = harmonic_decompose(f, L);
            json parts = json::array();
            for (const auto& [r, fr] : decomp) {
                parts.push_back({{"power", r}, {"harmonic", fr.str()}});
                o.text.push_back("p^" + std::to_string(r) + " * (" + fr.str() + ")");
            }
            if (decomp.empty()) o.text.push_back("0");
            o.result["parts"] = parts;
        } else if (cmd_tang->parsed()) {
            o.command = "tangential";
            as_json = tg_opts.format == "json";
            LieAlgebra L = resolve_algebra(tg_opts.algebra);
            auto vars = L.dual_vars(tg_opts.params);
            Polynomial gen = parse_poly(tg_ideal, vars);
            StarProduct S{"", nullptr};
            std::shared_ptr<WeylContext> ctx;
            if (tg_product == "weyl") {
                ctx = std::make_shared<WeylContext>(L, vars);
                S = make_star_weyl(ctx);
            } else if (tg_product == "moyal-heis") {
                S = make_star_moyal_heisenberg();
            } else if (tg_product == "psi-p") {
                if (L.name() != "su2") throw EvalError("psi-p requires --algebra su2");
                ctx = std::make_shared<WeylContext>(L, vars);
                auto O = std::make_shared<OrbitData>(OrbitData::su2(
                    vars, parse_radius(tg_radius, vars), parse_level(tg_level)));
                S = make_star_P(O, ctx);
            } else {
                throw EvalError("unknown product '" + tg_product + "'");
            }
            TangentialReport rep = check_tangential(S, {gen}, tg_degree, tg_horder);
            o.result["product"] = S.name;
            o.result["generator"] = gen.str();
            o.result["pass"] = rep.pass;
            o.text.push_back(std::string("tangential: ") + (rep.pass ? "PASS" : "FAIL"));
            o.text.push_back("product: " + S.name);
            o.text.push_back("generator: " + gen.str());
            for (const auto& w : rep.witnesses) {
                json jw{{"side", w.side},
                        {"monomial", w.monomial.str()},
                        {"h_order", w.h_order},
                        {"remainder", w.remainder.str()}};
                o.witnesses.push_back(jw);
                o.text.push_back("witness: side=" + w.side + " monomial=" + w.monomial.str() +
                                 " h_order=" + std::to_string(w.h_order) +
                                 " remainder=" + w.remainder.str());
            }
            if (!rep.pass) o.status = "fail";
        } else if (cmd_fuzzy->parsed()) {
            o.command = "fuzzy";
            as_json = fz_opts.format == "json";
            int twoj = parse_spin(fz_spin);
            Scalar h = Scalar::parse(fz_h);
            Irrep R = build_irrep(twoj, h);
            Report ver = verify_irrep(R);
            Scalar lambda = casimir_eigenvalue(R);
            int cap = fz_cap >= 0 ? fz_cap : std::max(twoj, 1);
            int dim = image_dimension(R, cap);
            o.result["spin"] = fz_spin;
            o.result["dimension"] = R.dim();
            o.result["brackets_ok"] = ver.pass;
            o.result["casimir"] = lambda.str();
            o.result["image_dimension"] = dim;
            o.text.push_back("dimension: " + std::to_string(R.dim()));
            o.text.push_back(std::string("brackets: ") + (ver.pass ? "ok" : "FAIL"));
            o.text.push_back("casimir: " + lambda.str());
            o.text.push_back("image dimension (cap " + std::to_string(cap) +
                             "): " + std::to_string(dim));
            for (auto kind : {LevelKind::plain, LevelKind::shifted}) {
                auto r = radius_for(R, kind);
                const char* name = kind == LevelKind::plain ? "radius_plain" : "radius_shifted";
                o.result[name] = r ? r->str() : "none";
                o.text.push_back(std::string(name) + ": " +
                                 (r ? r->str() : "none (convention-dependent)"));
            }
            if (fz_matrices) {
                o.result["X"] = R.rho[0].str();
                o.result["Y"] = R.rho[1].str();
                o.result["Z"] = R.rho[2].str();
                o.text.push_back("X:\n" + R.rho[0].str() + "Y:\n" + R.rho[1].str() + "Z:\n" +
                                 R.rho[2].str());
            }
            if (!ver.pass) {
                o.status = "fail";
                for (const auto& w : ver.witnesses) o.witnesses.push_back(w);
            }
        } else if (cmd_glue->parsed()) {
            o.command = "glue-demo";
            as_json = gl_opts.format == "json";
            GluingInstance G = gl_instance.empty()
                                   ? [&] {
                                         auto vars = VarSet::make({"q", "p"});
                                         Monomial d2(vars->size());
                                         d2.set(0, 1);
                                         d2.set(1, 1);
                                         return two_chart_moyal(vars, gl_order,
                                                                LinDiffOp::derivative(vars, d2),
                                                                Polynomial::variable(vars, 0));
                                     }()
                                   : load_gluing_file(gl_instance);
            struct Named {
                const char* name;
                Report rep;
            };
            std::vector<Named> checks;
            checks.push_back({"invariants", G.validate()});
            checks.push_back({"cocycle", check_cocycle(G, gl_degree)});
            checks.push_back({"intertwiner", check_intertwiner(G, gl_degree)});
            checks.push_back({"compatibility", check_compatibility(G, gl_degree)});
            // chart independence of the glued product
            Report agree;
            agree.summary = "glued product agrees between charts";
            auto monos = coordinate_monomials(*G.vars, gl_degree);
            for (const auto& ma : monos) {
                for (const auto& mb : monos) {
                    Polynomial f = Polynomial::monomial(G.vars, ma, Scalar(1));
                    Polynomial g = Polynomial::monomial(G.vars, mb, Scalar(1));
                    Polynomial first = glued_star(G, 0, f, g);
                    for (int r = 1; r < G.ncharts(); ++r)
                        if (!(glued_star(G, r, f, g) == first)) {
                            agree.fail("charts disagree on (" + f.str() + ", " + g.str() + ")");
                            break;
                        }
                    if (!agree.pass) break;
                }
                if (!agree.pass) break;
            }
            checks.push_back({"chart-independence", agree});
            bool all = true;
            for (const auto& c : checks) {
                all = all && c.rep.pass;
                o.result[c.name] = c.rep.pass;
                o.text.push_back(std::string(c.name) + ": " + (c.rep.pass ? "PASS" : "FAIL"));
                for (const auto& w : c.rep.witnesses) {
                    o.witnesses.push_back(std::string(c.name) + ": " + w);
                    o.text.push_back("  witness: " + w);
                }
            }
            if (!all) o.status = "fail";
        } else if (cmd_check->parsed()) {
            o.command = "check";
            as_json = ck_opts.format == "json";
            LieAlgebra L = resolve_algebra(ck_opts.algebra);
            auto vars = L.dual_vars(ck_opts.params);
            Report rep;
            if (ck_suite == "semiclassical") {
                auto ctx = std::make_shared<WeylContext>(L, vars);
                StarProduct S = make_star_weyl(ctx);
                if (ck_product == "moyal-heis") S = make_star_moyal_heisenberg();
                rep = check_semiclassical(S, L, vars, ck_degree);
            } else if (ck_suite == "poisson") {
                rep = L.poisson_properties(ck_degree);
            } else if (ck_suite == "intertwining") {
                WeylContext ctx(L, vars);
                rep.summary = "intertwining for all inner derivations";
                for (int k = 0; k < L.dim() && rep.pass; ++k) {
                    Report one = ctx.check_intertwining(L.ad_matrix(k), ck_degree);
                    if (!one.pass) rep = one;
                }
            } else {
                throw EvalError("unknown suite '" + ck_suite + "'");
            }
            o.result["suite"] = ck_suite;
            o.result["summary"] = rep.summary;
            o.result["pass"] = rep.pass;
            o.text.push_back("check " + ck_suite + ": " + (rep.pass ? "PASS" : "FAIL"));
            for (const auto& w : rep.witnesses) {
                o.witnesses.push_back(w);
                o.text.push_back("  witness: " + w);
            }
            if (!rep.pass) o.status = "fail";
        }
    } catch (const std::exception& e) {
        if (as_json) {
            json j;
            j["command"] = o.command;
            j["status"] = "error";
            j["result"] = json::object();
            j["witnesses"] = json::array({e.what()});
            out << j.dump(2) << '\n';
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    o.render(as_json, out);
    return o.status == "ok" ? 0 : 1;
}

} // namespace starq
