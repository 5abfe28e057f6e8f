// Command-line front end: diagonals, series products, integrality verdicts,
// mod-p algebraicity, operator transforms, modularity invariants and the
// corpus runner. Exit codes: 0 success, 1 verification failed, 2 usage,
// 3 computation error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "diagon/catalog.hpp"
#include "diagon/corpus.hpp"
#include "diagon/jsonio.hpp"
#include "diagon/modularity.hpp"

using namespace diagon;

namespace {

int g_trunc = 40;
bool g_json = false;
unsigned g_seed = 0;

void emit_series(const USeries& s) {
    if (g_json) std::cout << series_to_json(s).dump() << "\n";
    else std::cout << s.str() << "\n";
}

void emit_laurent(const LSeries& s) {
    if (g_json) {
        Json j{{"offset", s.offset()}, {"unit", series_to_json(s.unit())}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << s.str() << "\n";
    }
}

void emit_op(const LinDiffOp& L) {
    if (g_json) std::cout << op_to_json(L).dump() << "\n";
    else std::cout << L.str_theta() << "\n";
}

USeries load_series_arg(const std::string& arg, int trunc) {
    // "@file.json" loads a series/spec file, anything else parses as expression
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw domain_error("cannot open " + arg.substr(1));
        Json j;
        in >> j;
        if (j.contains("coeffs") && j.contains("trunc")) return series_from_json(j).truncated(trunc);
        return series_from_spec(j, trunc);
    }
    return expand_univariate(arg, trunc);
}

LinDiffOp load_op_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw domain_error("cannot open " + arg.substr(1));
        Json j;
        in >> j;
        return op_from_spec(j);
    }
    return catalog_operator(arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact diagonals, series products and modularity invariants"};
    app.require_subcommand(1);
    auto* trunc_opt =
        app.add_option("--trunc", g_trunc, "series truncation order (default 40; 24 for"
                                           " diagonals in five or more variables)");
    app.add_flag("--json", g_json, "emit JSON instead of text");
    app.add_option("--seed", g_seed, "seed for randomized fallbacks");

    // diag
    std::string diag_expr;
    int diag_nvars = 2;
    auto* diag = app.add_subcommand("diag", "diagonal of a rational function");
    diag->add_option("--expr", diag_expr)->required();
    diag->add_option("--nvars", diag_nvars)->required();

    // prod
    std::string prod_kind, prod_f, prod_g, prod_R;
    auto* prod = app.add_subcommand("prod", "series products");
    prod->add_option("kind", prod_kind, "hadamard|hurwitz|general")->required();
    prod->add_option("--f", prod_f)->required();
    prod->add_option("--g", prod_g)->required();
    prod->add_option("--R", prod_R, "two-variable weight for 'general'");

    // binom
    std::string binom_file;
    auto* binom = app.add_subcommand("binom", "binomial sum to rational function");
    binom->add_option("spec", binom_file, "JSON spec file")->required();

    // intcheck
    std::string int_series;
    auto* intc = app.add_subcommand("intcheck", "globally-bounded semi-decision");
    intc->add_option("--series", int_series)->required();

    // modp
    auto* modp = app.add_subcommand("modp", "mod-p reduction / algebraicity");
    std::string modp_action, modp_series;
    std::uint64_t modp_p = 3;
    int modp_dx = 4, modp_dy = 4, modp_guard = 4;
    modp->add_option("action", modp_action, "reduce|minpoly|hasse")->required();
    modp->add_option("--series", modp_series);
    modp->add_option("-p,--prime", modp_p)->required();
    modp->add_option("--dx", modp_dx);
    modp->add_option("--dy", modp_dy);
    modp->add_option("--guard", modp_guard);

    // ode
    auto* ode = app.add_subcommand("ode", "operator transforms and guessing");
    std::string ode_action, ode_op, ode_op2, ode_series, ode_param;
    int ode_maxorder = 6, ode_maxdeg = 12, ode_guard = 10;
    ode->add_option("action", ode_action,
                    "guess|apply|adjoint|extsq|symsq|pullback|conjugate|hadamard|indicial")
        ->required();
    ode->add_option("--op", ode_op);
    ode->add_option("--op2", ode_op2);
    ode->add_option("--series", ode_series);
    ode->add_option("--param", ode_param, "rational function parameter");
    ode->add_option("--max-order", ode_maxorder);
    ode->add_option("--max-degree", ode_maxdeg);
    ode->add_option("--guard", ode_guard);

    // mum
    auto* mum = app.add_subcommand("mum", "Frobenius basis and Yukawa invariants");
    std::string mum_action, mum_op;
    mum->add_option("action", mum_action, "basis|nome|mirror|yukawa|kstar|kn|cy-report")
        ->required();
    mum->add_option("--op", mum_op)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "identity / schwarzian / curve checks");
    std::string ver_action, ver_file, ver_p1, ver_p2, ver_phi;
    verify->add_option("action", ver_action, "identity|schwarzian|curve")->required();
    verify->add_option("--file", ver_file, "JSON identity spec");
    verify->add_option("--p1", ver_p1);
    verify->add_option("--p2", ver_p2);
    verify->add_option("--phi", ver_phi);

    // run corpus
    auto* run = app.add_subcommand("run", "run a corpus of checks");
    std::string run_path, run_filter;
    int run_jobs = 1;
    run->add_option("corpus", run_path)->required();
    run->add_option("--filter", run_filter);
    run->add_option("--jobs", run_jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*diag) {
            int t = g_trunc;
            if (diag_nvars >= 5 && trunc_opt->count() == 0) t = 24;  // cost control
            emit_series(diagonal(diag_expr, diag_nvars, t));
        } else if (*prod) {
            USeries f = load_series_arg(prod_f, g_trunc);
            USeries g = load_series_arg(prod_g, g_trunc);
            if (prod_kind == "hadamard") emit_series(hadamard(f, g));
            else if (prod_kind == "hurwitz") emit_series(hurwitz(f, g));
            else if (prod_kind == "general") {
                if (prod_R.empty()) throw CLI::ValidationError("--R required for 'general'");
                emit_series(general_product(f, g, parse_expr(prod_R, 2)));
            } else {
                throw CLI::ValidationError("unknown product kind");
            }
        } else if (*binom) {
            std::ifstream in(binom_file);
            if (!in) throw domain_error("cannot open " + binom_file);
            Json j;
            in >> j;
            auto cert = binom_sum_to_rational(binom_spec_from_json(j), std::min(g_trunc, 12));
            if (g_json) {
                Json out{{"expr", cert.expr->str()},
                         {"nvars", cert.nvars},
                         {"series", series_to_json(cert.matched)}};
                std::cout << out.dump() << "\n";
            } else {
                std::cout << cert.expr->str() << "\n" << cert.matched.str() << "\n";
            }
        } else if (*intc) {
            USeries f = load_series_arg(int_series, g_trunc);
            IntegralityVerdict v = find_rescaling(f);
            if (g_json) std::cout << verdict_to_json(v).dump() << "\n";
            else std::cout << v.describe() << "\n";
        } else if (*modp) {
            if (modp_action == "hasse") {
                auto h = hasse_poly(modp_p);
                if (g_json) std::cout << Json(h).dump() << "\n";
                else {
                    for (std::size_t k = 0; k < h.size(); ++k) {
                        if (k) std::cout << " + ";
                        std::cout << h[k];
                        if (k == 1) std::cout << "*z";
                        if (k > 1) std::cout << "*z^" << k;
                    }
                    std::cout << "  (mod " << modp_p << ")\n";
                }
            } else {
                USeries f = load_series_arg(modp_series, g_trunc);
                FpSeries fs = reduce_mod_p(f, modp_p);
                if (modp_action == "reduce") {
                    if (g_json) std::cout << Json(fs.coeffs).dump() << "\n";
                    else {
                        for (auto c : fs.coeffs) std::cout << c << " ";
                        std::cout << "\n";
                    }
                } else if (modp_action == "minpoly") {
                    auto rel = minpoly_mod_p(fs, modp_dx, modp_dy, modp_guard);
                    if (!rel) {
                        std::cout << "NotFound within bounds\n";
                        return 1;
                    }
                    if (g_json) std::cout << relation_to_json(*rel).dump() << "\n";
                    else std::cout << rel->str() << "\n";
                } else {
                    throw CLI::ValidationError("unknown modp action");
                }
            }
        } else if (*ode) {
            if (ode_action == "guess") {
                USeries f = load_series_arg(ode_series, g_trunc);
                GuessReport rep = guess_ode(f, ode_maxorder, ode_maxdeg, ode_guard);
                if (g_json) std::cout << guess_report_to_json(rep).dump() << "\n";
                else if (rep.op) emit_op(*rep.op);
                else {
                    std::cout << "no operator found within bounds\n";
                    return 1;
                }
            } else if (ode_action == "apply") {
                LinDiffOp L = load_op_arg(ode_op);
                emit_series(apply_op(L, load_series_arg(ode_series, g_trunc)));
            } else if (ode_action == "adjoint") {
                emit_op(adjoint(load_op_arg(ode_op)).normalized());
            } else if (ode_action == "extsq") {
                emit_op(exterior_square(load_op_arg(ode_op), g_seed));
            } else if (ode_action == "symsq") {
                emit_op(symmetric_square(load_op_arg(ode_op), g_seed));
            } else if (ode_action == "pullback") {
                emit_op(pullback_op(load_op_arg(ode_op), parse_ratfunc(ode_param)).normalized());
            } else if (ode_action == "conjugate") {
                emit_op(conjugate_op(load_op_arg(ode_op), parse_ratfunc(ode_param)).normalized());
            } else if (ode_action == "hadamard") {
                GuessReport rep = hadamard_op(load_op_arg(ode_op), load_op_arg(ode_op2),
                                              ode_maxorder, ode_maxdeg, g_trunc, ode_guard);
                if (g_json) std::cout << guess_report_to_json(rep).dump() << "\n";
                else if (rep.op) emit_op(*rep.op);
                else {
                    std::cout << "no operator found within bounds\n";
                    return 1;
                }
            } else if (ode_action == "indicial") {
                LinDiffOp L = load_op_arg(ode_op);
                Indicial ind = indicial_exponents(L);
                if (g_json) {
                    Json roots = Json::array();
                    for (const auto& [r, m] : ind.exponents)
                        roots.push_back(Json{{"root", rat_to_string(r)}, {"mult", m}});
                    std::cout << Json{{"roots", roots},
                                      {"nonrational_factor", ind.nonrational.str("r")},
                                      {"mum", is_mum(L)}}
                                     .dump()
                              << "\n";
                } else {
                    for (const auto& [r, m] : ind.exponents)
                        std::cout << rat_to_string(r) << " (x" << m << ") ";
                    if (ind.nonrational.degree() > 0)
                        std::cout << " nonrational: " << ind.nonrational.str("r");
                    std::cout << (is_mum(L) ? "  [MUM]" : "") << "\n";
                }
            } else {
                throw CLI::ValidationError("unknown ode action");
            }
        } else if (*mum) {
            LinDiffOp L = load_op_arg(mum_op);
            if (mum_action == "basis") {
                MumBasis b = frobenius_mum_basis(L, g_trunc);
                for (int k = 0; k < b.order; ++k)
                    std::cout << "t" << k << ": " << b.t[k].str() << "\n";
            } else if (mum_action == "nome") {
                emit_series(nome(L, g_trunc));
            } else if (mum_action == "mirror") {
                emit_series(mirror_map(L, g_trunc));
            } else if (mum_action == "yukawa") {
                Yukawa y = yukawa(L, g_trunc);
                std::cout << "K(x): ";
                emit_laurent(y.K_x);
                std::cout << "K(q): ";
                emit_laurent(y.K_q);
            } else if (mum_action == "kstar") {
                emit_laurent(adjoint_yukawa(L, g_trunc));
            } else if (mum_action == "kn") {
                auto ks = kn_invariants(L, g_trunc);
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    std::cout << "K" << i + 3 << ": ";
                    emit_laurent(ks[i]);
                }
            } else if (mum_action == "cy-report") {
                CYReport rep = calabi_yau_report(L, g_trunc);
                std::cout << rep.describe() << "\n";
            } else {
                throw CLI::ValidationError("unknown mum action");
            }
        } else if (*verify) {
            bool ok = false;
            if (ver_action == "schwarzian") {
                ok = schwarzian_pair_check(parse_ratfunc(ver_p1), parse_ratfunc(ver_p2),
                                           schwarzian_weight13());
            } else if (ver_action == "curve") {
                ok = modular_curve_check(BivarPoly::parse(ver_phi), parse_ratfunc(ver_p1),
                                         parse_ratfunc(ver_p2));
            } else if (ver_action == "identity") {
                std::ifstream in(ver_file);
                if (!in) throw domain_error("cannot open " + ver_file);
                Json j;
                in >> j;
                CorpusEntry e{"cli", "", "identity", j};
                EntryResult r = run_entry(e);
                ok = r.ok;
                std::cout << r.detail << "\n";
            } else {
                throw CLI::ValidationError("unknown verify action");
            }
            std::cout << (ok ? "verified" : "FAILED") << "\n";
            return ok ? 0 : 1;
        } else if (*run) {
            auto entries = load_corpus(run_path);
            RunReport rep = run_corpus(entries, run_filter, run_jobs);
            if (g_json) std::cout << rep.to_json().dump(2) << "\n";
            else std::cout << rep.to_text();
            return rep.failed == 0 ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
