#include "diagon/jsonio.hpp"

namespace diagon {

Json series_to_json(const USeries& s) {
    Json coeffs = Json::array();
    for (int k = 0; k <= s.trunc(); ++k) coeffs.push_back(rat_to_string(s[k]));
    return Json{{"trunc", s.trunc()}, {"coeffs", coeffs}};
}

USeries series_from_json(const Json& j) {
    int t = j.at("trunc").get<int>();
    std::vector<Rat> c;
    for (const auto& e : j.at("coeffs")) c.push_back(rat_from_string(e.get<std::string>()));
    return USeries(t, std::move(c));
}

namespace {

Json poly_to_json(const UPoly& p) {
    Json a = Json::array();
    for (int k = 0; k <= p.degree(); ++k) a.push_back(rat_to_string(p.coeff(k)));
    return a;
}

UPoly poly_from_json(const Json& j) {
    std::vector<Rat> c;
    for (const auto& e : j) c.push_back(rat_from_string(e.get<std::string>()));
    return UPoly(std::move(c));
}

}  // namespace

Json op_to_json(const LinDiffOp& L) {
    Json a = Json::array();
    for (const auto& p : L.p) a.push_back(poly_to_json(p));
    return a;
}

LinDiffOp op_from_json(const Json& j) {
    const Json& coeffs = j.is_array() ? j : j.at("coeffs");
    std::vector<UPoly> p;
    for (const auto& e : coeffs) p.push_back(poly_from_json(e));
    LinDiffOp L(std::move(p));
    if (j.is_object() && j.contains("content")) L.content = poly_from_json(j.at("content"));
    return L;
}

Json verdict_to_json(const IntegralityVerdict& v) {
    Json j;
    switch (v.kind) {
        case IntegralityKind::GloballyBoundedWith: j["kind"] = "globally_bounded"; break;
        case IntegralityKind::LikelyNotGloballyBounded: j["kind"] = "likely_not_globally_bounded"; break;
        case IntegralityKind::LogarithmicallyBounded: j["kind"] = "logarithmically_bounded"; break;
        case IntegralityKind::Inconclusive: j["kind"] = "inconclusive"; break;
    }
    j["window"] = v.window;
    if (v.kind == IntegralityKind::GloballyBoundedWith) j["rescale"] = v.rescale.get_str();
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < v.witness_primes.size(); ++i)
        witnesses.push_back(Json{{"p", v.witness_primes[i].get_str()},
                                 {"first_index", v.witness_indices[i]}});
    j["witnesses"] = witnesses;
    Json prof = Json::array();
    for (const auto& pr : v.profile) {
        Json tbl = Json::array();
        for (const auto& [n, e] : pr.valuations) tbl.push_back(Json{{"n", n}, {"v", e}});
        prof.push_back(Json{{"p", pr.p.get_str()},
                            {"first_index", pr.first_index},
                            {"max_ceil_v_over_n", pr.max_exponent_per_index},
                            {"valuations", tbl}});
    }
    j["profile"] = prof;
    Json opq = Json::array();
    for (const auto& c : v.opaque_cofactors) opq.push_back(c.get_str());
    if (!opq.empty()) j["opaque_cofactors"] = opq;
    return j;
}

Json relation_to_json(const AlgRelation& r) {
    Json rows = Json::array();
    for (const auto& row : r.coeff) {
        Json jr = Json::array();
        for (auto c : row) jr.push_back(c);
        rows.push_back(jr);
    }
    return Json{{"p", r.p}, {"dx", r.dx}, {"dy", r.dy}, {"guard", r.guard}, {"coeff", rows}};
}

BinomSumSpec binom_spec_from_json(const Json& j) {
    BinomSumSpec s;
    s.depth = j.value("depth", 1);
    for (const auto& f : j.at("factors")) {
        BinomFactor bf;
        bf.top_n = f.at("top")[0].get<long>();
        bf.top_k = f.at("top")[1].get<long>();
        bf.bot_n = f.at("bot")[0].get<long>();
        bf.bot_k = f.at("bot")[1].get<long>();
        bf.pow = f.value("pow", 1);
        s.factors.push_back(bf);
    }
    if (j.contains("prefactor")) {
        const auto& p = j.at("prefactor");
        s.prefactor_c = rat_from_string(p.at("c").get<std::string>());
        s.prefactor_a = p.value("a", 0L);
        s.prefactor_b = p.value("b", 0L);
    }
    s.sign_k = j.value("sign_k", false);
    if (j.contains("range")) s.range_div = j.at("range").value("div", 1);
    return s;
}

Json guess_report_to_json(const GuessReport& r) {
    Json j;
    j["found"] = r.op.has_value();
    if (r.op) {
        j["order"] = r.order;
        j["degree"] = r.degree;
        j["terms_consumed"] = r.terms_consumed;
        j["guard_verified"] = r.guard_verified;
        j["operator"] = op_to_json(*r.op);
    }
    return j;
}

}  // namespace diagon
