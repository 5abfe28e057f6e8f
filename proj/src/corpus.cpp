#include "diagon/corpus.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "diagon/catalog.hpp"
#include "diagon/modularity.hpp"

namespace diagon {

namespace {

std::mutex g_catalog_mutex;
std::map<std::string, LinDiffOp> g_catalog_cache;

IdentityTerm identity_term_from_json(const Json& j) {
    IdentityTerm t;
    if (j.contains("coeff")) t.coeff = rat_from_string(j.at("coeff").get<std::string>());
    if (j.contains("prefactors"))
        for (const auto& p : j.at("prefactors")) {
            UPoly poly = parse_ratfunc(p.at("poly").get<std::string>()).as_polynomial();
            Rat e = rat_from_string(p.at("exp").get<std::string>());
            t.prefactors.emplace_back(poly, e);
        }
    if (j.contains("hyp")) {
        t.kind = IdentityTerm::Kind::Hyp;
        for (const auto& a : j.at("hyp").at("upper"))
            t.upper.push_back(rat_from_string(a.get<std::string>()));
        for (const auto& b : j.at("hyp").at("lower"))
            t.lower.push_back(rat_from_string(b.get<std::string>()));
        t.pullback = parse_ratfunc(j.at("hyp").at("pullback").get<std::string>());
        t.power = j.at("hyp").value("power", 1L);
    } else if (j.contains("heun")) {
        const auto& h = j.at("heun");
        t.kind = IdentityTerm::Kind::Heun;
        t.ha = rat_from_string(h.at("a").get<std::string>());
        t.hq = rat_from_string(h.at("q").get<std::string>());
        t.halpha = rat_from_string(h.at("alpha").get<std::string>());
        t.hbeta = rat_from_string(h.at("beta").get<std::string>());
        t.hgamma = rat_from_string(h.at("gamma").get<std::string>());
        t.hdelta = rat_from_string(h.at("delta").get<std::string>());
        t.pullback = parse_ratfunc(h.at("pullback").get<std::string>());
        t.power = h.value("power", 1L);
    }
    return t;
}

std::vector<Rat> rats_from_json(const Json& a) {
    std::vector<Rat> v;
    for (const auto& e : a) v.push_back(rat_from_string(e.get<std::string>()));
    return v;
}

bool prefix_matches(const USeries& s, const std::vector<Rat>& expected, std::string& detail) {
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (static_cast<int>(k) > s.trunc()) {
            detail = "series shorter than expected prefix";
            return false;
        }
        if (!(s[k] == expected[k])) {
            std::ostringstream os;
            os << "mismatch at index " << k << ": got " << rat_to_string(s[k]) << ", want "
               << rat_to_string(expected[k]);
            detail = os.str();
            return false;
        }
    }
    detail = "prefix of " + std::to_string(expected.size()) + " terms matches";
    return true;
}

bool laurent_prefix_matches(const LSeries& s, int start, const std::vector<Rat>& expected,
                            std::string& detail) {
    for (std::size_t k = 0; k < expected.size(); ++k) {
        Rat got = s.coeff(start + static_cast<int>(k));
        if (!(got == expected[k])) {
            std::ostringstream os;
            os << "mismatch at exponent " << start + static_cast<int>(k) << ": got "
               << rat_to_string(got) << ", want " << rat_to_string(expected[k]);
            detail = os.str();
            return false;
        }
    }
    detail = "prefix matches";
    return true;
}

}  // namespace

LinDiffOp catalog_operator(const std::string& name) {
    {
        std::lock_guard<std::mutex> lk(g_catalog_mutex);
        auto it = g_catalog_cache.find(name);
        if (it != g_catalog_cache.end()) return it->second;
    }
    LinDiffOp L;
    if (name.rfind("omega", 0) == 0) {
        L = catalog::omega(std::stoi(name.substr(5)));
    } else if (name.size() >= 3 && name[0] == 'H') {
        auto comma = name.find(',');
        int m = std::stoi(name.substr(1, comma - 1));
        int n = std::stoi(name.substr(comma + 1));
        L = catalog::hadamard_omega(m, n);
    } else if (name == "B1") {
        L = catalog::batyrev_b1();
    } else if (name == "B2") {
        L = catalog::batyrev_b2();
    } else if (name == "B2t") {
        L = catalog::batyrev_b2_twisted();
    } else if (name.rfind("M4:", 0) == 0) {
        L = catalog::saal_m4(rat_from_string(name.substr(3)));
    } else if (name.rfind("C:", 0) == 0) {
        L = catalog::saal_c(rat_from_string(name.substr(2)));
    } else if (name.rfind("Codd:", 0) == 0) {
        L = catalog::saal_c_odd(rat_from_string(name.substr(5)));
    } else if (name == "cube_sum") {
        L = catalog::heun_cube_sum();
    } else if (name == "diamond") {
        L = catalog::heun_diamond();
    } else if (name == "fcc") {
        L = catalog::heun_fcc();
    } else {
        throw domain_error("unknown catalog operator '" + name + "'");
    }
    std::lock_guard<std::mutex> lk(g_catalog_mutex);
    g_catalog_cache.emplace(name, L);
    return L;
}

USeries series_from_spec(const Json& spec, int trunc) {
    if (spec.contains("expr")) return expand_univariate(spec.at("expr").get<std::string>(), trunc);
    if (spec.contains("hyp")) {
        const auto& h = spec.at("hyp");
        return pfq_series(rats_from_json(h.at("upper")), rats_from_json(h.at("lower")),
                          rat_from_string(h.at("scale").get<std::string>()), trunc);
    }
    if (spec.contains("heun")) {
        const auto& h = spec.at("heun");
        return heun_series(rat_from_string(h.at("a").get<std::string>()),
                           rat_from_string(h.at("q").get<std::string>()),
                           rat_from_string(h.at("alpha").get<std::string>()),
                           rat_from_string(h.at("beta").get<std::string>()),
                           rat_from_string(h.at("gamma").get<std::string>()),
                           rat_from_string(h.at("delta").get<std::string>()),
                           rat_from_string(h.at("scale").get<std::string>()), trunc);
    }
    if (spec.contains("diagonal")) {
        const auto& d = spec.at("diagonal");
        return diagonal(d.at("expr").get<std::string>(), d.at("nvars").get<int>(), trunc);
    }
    if (spec.contains("solution_of")) {
        LinDiffOp L = op_from_spec(spec.at("solution_of"));
        return series_solution(L, {Rat(1)}, trunc);
    }
    if (spec.contains("binom")) {
        BinomSumSpec bs = binom_spec_from_json(spec.at("binom"));
        USeries s(trunc);
        for (long n = 0; n <= trunc; ++n) s.at(n) = binom_sum_term(bs, n);
        return s;
    }
    if (spec.contains("series")) return series_from_json(spec.at("series")).truncated(trunc);
    throw domain_error("series spec not understood");
}

LinDiffOp op_from_spec(const Json& spec) {
    if (spec.is_string()) return catalog_operator(spec.get<std::string>());
    if (spec.contains("catalog")) return catalog_operator(spec.at("catalog").get<std::string>());
    if (spec.contains("hyp")) {
        const auto& h = spec.at("hyp");
        return hypergeometric_op(rats_from_json(h.at("upper")), rats_from_json(h.at("lower")),
                                 rat_from_string(h.at("scale").get<std::string>()));
    }
    if (spec.contains("heun")) {
        const auto& h = spec.at("heun");
        return heun_op(rat_from_string(h.at("a").get<std::string>()),
                       rat_from_string(h.at("q").get<std::string>()),
                       rat_from_string(h.at("alpha").get<std::string>()),
                       rat_from_string(h.at("beta").get<std::string>()),
                       rat_from_string(h.at("gamma").get<std::string>()),
                       rat_from_string(h.at("delta").get<std::string>()),
                       rat_from_string(h.at("scale").get<std::string>()));
    }
    if (spec.contains("coeffs") || spec.is_array()) return op_from_json(spec);
    throw domain_error("operator spec not understood");
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open corpus file " + path);
    Json j;
    in >> j;
    std::vector<CorpusEntry> out;
    for (const auto& e : j.at("entries")) {
        CorpusEntry ce;
        ce.id = e.at("id").get<std::string>();
        ce.ref = e.value("ref", "");
        ce.kind = e.at("kind").get<std::string>();
        ce.spec = e;
        out.push_back(std::move(ce));
    }
    return out;
}

namespace {

EntryResult run_entry_inner(const CorpusEntry& e) {
    EntryResult res;
    res.id = e.id;
    const Json& s = e.spec;
    std::string detail;
    if (e.kind == "diagonal") {
        int t = s.at("trunc").get<int>();
        USeries d = diagonal(s.at("expr").get<std::string>(), s.at("nvars").get<int>(), t);
        res.ok = prefix_matches(d, rats_from_json(s.at("expected")), detail);
    } else if (e.kind == "product") {
        int t = s.at("trunc").get<int>();
        USeries f = series_from_spec(s.at("f"), t);
        USeries g = series_from_spec(s.at("g"), t);
        std::string op = s.at("op").get<std::string>();
        USeries r(t);
        if (op == "hadamard") r = hadamard(f, g);
        else if (op == "hurwitz") r = hurwitz(f, g);
        else if (op == "general") r = general_product(f, g, parse_expr(s.at("R").get<std::string>(), 2));
        else throw domain_error("unknown product op " + op);
        if (s.contains("rescale")) r = r.rescale(rat_from_string(s.at("rescale").get<std::string>()));
        if (s.contains("scale")) r = r * rat_from_string(s.at("scale").get<std::string>());
        res.ok = prefix_matches(r, rats_from_json(s.at("expected")), detail);
    } else if (e.kind == "binom") {
        BinomSumSpec spec = binom_spec_from_json(s.at("spec"));
        int t = s.at("trunc").get<int>();
        auto cert = binom_sum_to_rational(spec, t);
        res.ok = prefix_matches(cert.matched, rats_from_json(s.at("expected")), detail);
    } else if (e.kind == "integrality") {
        int t = s.at("trunc").get<int>();
        USeries f = series_from_spec(s.at("f"), t);
        IntegralityVerdict v = find_rescaling(f);
        const auto& exp = s.at("expected");
        std::string kind = exp.at("kind").get<std::string>();
        if (kind == "globally_bounded") {
            res.ok = v.kind == IntegralityKind::GloballyBoundedWith &&
                     v.rescale == Int(exp.at("rescale").get<std::string>());
        } else if (kind == "likely_not_globally_bounded") {
            res.ok = v.kind == IntegralityKind::LikelyNotGloballyBounded;
            if (res.ok && exp.contains("min_witnesses"))
                res.ok = static_cast<long>(v.witness_primes.size()) >=
                         exp.at("min_witnesses").get<long>();
        }
        detail = v.describe();
    } else if (e.kind == "modp") {
        std::string action = s.at("action").get<std::string>();
        if (action == "hasse") {
            auto h = hasse_poly(s.at("p").get<std::uint64_t>());
            std::vector<std::uint64_t> want;
            for (const auto& c : s.at("expected")) want.push_back(c.get<std::uint64_t>());
            res.ok = h == want;
            detail = "hasse polynomial degree " + std::to_string(h.size() - 1);
        } else {
            int t = s.at("trunc").get<int>();
            USeries f = series_from_spec(s.at("f"), t);
            FpSeries fs = reduce_mod_p(f, s.at("p").get<std::uint64_t>());
            if (action == "reduce") {
                std::vector<std::uint64_t> want;
                for (const auto& c : s.at("expected")) want.push_back(c.get<std::uint64_t>());
                res.ok = true;
                for (std::size_t k = 0; k < want.size(); ++k)
                    res.ok = res.ok && fs.coeffs[k] == want[k];
                detail = "residues compared";
            } else if (action == "minpoly") {
                auto rel = minpoly_mod_p(fs, s.at("dx").get<int>(), s.at("dy").get<int>(),
                                         s.value("guard", 4));
                if (!rel) {
                    res.ok = false;
                    detail = "no relation found";
                } else {
                    detail = rel->str();
                    std::vector<std::vector<std::uint64_t>> want;
                    for (const auto& row : s.at("expected"))
                        want.push_back(row.get<std::vector<std::uint64_t>>());
                    res.ok = rel->coeff == want;
                }
            } else {
                throw domain_error("unknown modp action " + action);
            }
        }
    } else if (e.kind == "guess") {
        int t = s.at("trunc").get<int>();
        USeries f = series_from_spec(s.at("f"), t);
        GuessReport rep = guess_ode(f, s.at("max_order").get<int>(), s.at("max_degree").get<int>(),
                                    s.value("guard", 10));
        res.ok = rep.op.has_value() && rep.order == s.at("expected_order").get<int>();
        if (res.ok && s.contains("expected_degree"))
            res.ok = rep.degree == s.at("expected_degree").get<int>();
        detail = rep.op ? ("order " + std::to_string(rep.order) + ", degree " +
                           std::to_string(rep.degree))
                        : "no operator found";
    } else if (e.kind == "operator-transform") {
        LinDiffOp L = op_from_spec(s.at("op"));
        std::string action = s.at("action").get<std::string>();
        if (action == "extsq-order" || action == "symsq-order") {
            LinDiffOp S = action[0] == 'e' ? exterior_square(L) : symmetric_square(L);
            res.ok = S.order() == s.at("expected").get<int>();
            detail = "order " + std::to_string(S.order());
            if (res.ok && s.contains("constant_solution")) {
                bool has = check_rational_solution(S, RatFunc(Rat(1)));
                res.ok = has == s.at("constant_solution").get<bool>();
                detail += has ? ", constant solution" : ", no constant solution";
            }
        } else if (action == "adjoint-self") {
            LinDiffOp N = L.normalized();
            res.ok = adjoint(N).normalized() == N;
            detail = "adjoint compared after content normalization";
        } else if (action == "conjugate-adjoint") {
            auto w = conjugate_to_adjoint_witness(L);
            res.ok = w.has_value() == s.at("expected").get<bool>();
            detail = w ? "witness " + w->str() : "no witness within reach";
        } else if (action == "atkin") {
            // x^r L(x) = L(A/x) x^r as operators: conjugation by x^r equals the
            // pullback by A/x up to content
            Rat rexp = rat_from_string(s.at("r").get<std::string>());
            Rat A = rat_from_string(s.at("A").get<std::string>());
            RatFunc rr(UPoly(rexp), UPoly::x());
            LinDiffOp lhs = conjugate_op(L, rr).normalized();
            RatFunc pb(UPoly(A), UPoly::x());
            LinDiffOp rhs = pullback_op(L, pb).normalized();
            res.ok = lhs == rhs;
            detail = "operator identity " + std::string(res.ok ? "holds" : "fails");
        } else if (action == "indicial-mum") {
            res.ok = is_mum(L) == s.at("expected").get<bool>();
            detail = std::string("MUM: ") + (is_mum(L) ? "yes" : "no");
        } else {
            throw domain_error("unknown operator-transform action " + action);
        }
    } else if (e.kind == "modularity") {
        LinDiffOp L = op_from_spec(s.at("op"));
        std::string action = s.at("action").get<std::string>();
        int t = s.at("trunc").get<int>();
        if (action == "nome") {
            res.ok = prefix_matches(nome(L, t), rats_from_json(s.at("expected")), detail);
        } else if (action == "mirror") {
            res.ok = prefix_matches(mirror_map(L, t), rats_from_json(s.at("expected")), detail);
        } else if (action == "yukawa" || action == "yukawa-x") {
            Yukawa y = yukawa(L, t);
            const LSeries& K = action == "yukawa" ? y.K_q : y.K_x;
            int start = s.value("start", 0);
            res.ok = laurent_prefix_matches(K, start, rats_from_json(s.at("expected")), detail);
        } else if (action == "kstar") {
            LSeries K = adjoint_yukawa(L, t);
            res.ok = laurent_prefix_matches(K, s.value("start", 0),
                                            rats_from_json(s.at("expected")), detail);
        } else if (action == "cy-report") {
            CYReport rep = calabi_yau_report(L, t);
            res.ok = true;
            if (s.contains("mum")) res.ok &= rep.mum == s.at("mum").get<bool>();
            if (s.contains("ext2_order"))
                res.ok &= rep.ext2_order == s.at("ext2_order").get<int>();
            if (s.contains("calabi_yau"))
                res.ok &= rep.calabi_yau == s.at("calabi_yau").get<bool>();
            if (s.contains("y0_bounded"))
                res.ok &= rep.y0_bounded == s.at("y0_bounded").get<bool>();
            if (s.contains("nome_bounded"))
                res.ok &= rep.nome_bounded == s.at("nome_bounded").get<bool>();
            detail = rep.describe();
        } else {
            throw domain_error("unknown modularity action " + action);
        }
    } else if (e.kind == "identity") {
        std::vector<IdentityTerm> lhs, rhs;
        for (const auto& tj : s.at("lhs")) lhs.push_back(identity_term_from_json(tj));
        for (const auto& tj : s.at("rhs")) rhs.push_back(identity_term_from_json(tj));
        int t = s.at("trunc").get<int>();
        res.ok = identity_check(lhs, rhs, t);
        detail = "series compared through x^" + std::to_string(t);
        if (res.ok && s.contains("expected")) {
            USeries l(t);
            for (const auto& term : lhs) l = l + identity_term_series(term, t);
            res.ok = prefix_matches(l, rats_from_json(s.at("expected")), detail);
        }
    } else if (e.kind == "curve") {
        BivarPoly Phi = BivarPoly::parse(s.at("phi").get<std::string>());
        RatFunc u = parse_ratfunc(s.at("u").get<std::string>());
        RatFunc v = parse_ratfunc(s.at("v").get<std::string>());
        res.ok = modular_curve_check(Phi, u, v) == s.value("expected", true);
        detail = "exact rational check";
    } else if (e.kind == "schwarzian") {
        RatFunc p1 = parse_ratfunc(s.at("p1").get<std::string>());
        RatFunc p2 = parse_ratfunc(s.at("p2").get<std::string>());
        res.ok = schwarzian_pair_check(p1, p2, schwarzian_weight13()) == s.value("expected", true);
        detail = "exact rational check";
    } else {
        throw domain_error("unknown corpus kind " + e.kind);
    }
    res.detail = detail;
    return res;
}

}  // namespace

EntryResult run_entry(const CorpusEntry& e) {
    auto start = std::chrono::steady_clock::now();
    EntryResult res;
    try {
        res = run_entry_inner(e);
    } catch (const std::exception& ex) {
        res.id = e.id;
        res.ok = false;
        res.detail = std::string("error: ") + ex.what();
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
    return res;
}

RunReport run_corpus(const std::vector<CorpusEntry>& entries, const std::string& filter, int jobs) {
    std::vector<const CorpusEntry*> selected;
    for (const auto& e : entries)
        if (filter.empty() || e.id.find(filter) != std::string::npos ||
            e.kind.find(filter) != std::string::npos)
            selected.push_back(&e);
    RunReport rep;
    rep.results.resize(selected.size());
    rep.total = static_cast<int>(selected.size());
    std::size_t next = 0;
    std::mutex mtx;
    auto worker = [&]() {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (next >= selected.size()) return;
                i = next++;
            }
            rep.results[i] = run_entry(*selected[i]);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& r : rep.results)
        if (!r.ok) ++rep.failed;
    return rep;
}

Json RunReport::to_json(bool with_timing) const {
    Json out;
    Json arr = Json::array();
    for (const auto& r : results) {
        Json e{{"id", r.id}, {"ok", r.ok}, {"detail", r.detail}};
        if (with_timing) e["wall_ms"] = r.wall_ms;
        arr.push_back(e);
    }
    out["entries"] = arr;
    out["total"] = total;
    out["failed"] = failed;
    return out;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    for (const auto& r : results)
        os << (r.ok ? "PASS" : "FAIL") << "  " << r.id << "  " << r.detail << "\n";
    os << total - failed << "/" << total << " entries passed\n";
    return os.str();
}

}  // namespace diagon
