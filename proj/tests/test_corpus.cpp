#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diagon/catalog.hpp"
#include "diagon/corpus.hpp"
#include "diagon/modularity.hpp"

using namespace diagon;

TEST_CASE("series and operator JSON round-trips are bit exact") {
    USeries s(6, {Rat(1), Rat(-1, 2), Rat(0), Rat(22, 7), Rat(5), Rat(0), Rat(-9)});
    CHECK(series_from_json(series_to_json(s)) == s);
    Json j1 = series_to_json(s);
    CHECK(series_to_json(series_from_json(j1)) == j1);

    LinDiffOp L = catalog::batyrev_b2();
    CHECK(op_from_json(op_to_json(L)) == L);
    Json j2 = op_to_json(L);
    CHECK(op_to_json(op_from_json(j2)) == j2);
}

TEST_CASE("verdict JSON carries the valuation table") {
    USeries f = pfq_series({Rat(1, 3), Rat(2, 3)}, {Rat(1)}, 1, 30);
    Json j = verdict_to_json(find_rescaling(f));
    CHECK(j.at("kind") == "globally_bounded");
    CHECK(j.at("rescale") == "27");
    CHECK(j.at("profile").size() == 1);
    CHECK(j.at("profile")[0].at("p") == "3");
    CHECK(j.at("profile")[0].at("valuations").size() > 5);
}

TEST_CASE("corpus runs deterministically across job counts") {
    auto entries = load_corpus(std::string(DIAGON_SOURCE_DIR) + "/corpus/corpus.json");
    // a cheap but representative slice
    std::vector<CorpusEntry> slice;
    for (const auto& e : entries)
        if (e.kind == "identity" || e.kind == "modp" || e.kind == "diagonal")
            slice.push_back(e);
    REQUIRE(slice.size() > 10);
    RunReport r1 = run_corpus(slice, "", 1);
    RunReport r4 = run_corpus(slice, "", 4);
    CHECK(r1.failed == 0);
    CHECK(r1.to_json(false).dump() == r4.to_json(false).dump());
    // filtering
    RunReport rf = run_corpus(slice, "minpoly", 1);
    CHECK(rf.total == 3);
}

TEST_CASE("binom spec JSON matches the documented schema") {
    Json j = Json::parse(R"({"depth":1,
        "factors":[{"top":[1,0],"bot":[0,2],"pow":1},{"top":[0,2],"bot":[0,1],"pow":2}],
        "prefactor":{"c":"4","a":1,"b":-2}, "sign_k":false, "range":{"div":2}})");
    BinomSumSpec s = binom_spec_from_json(j);
    CHECK(s.factors.size() == 2);
    CHECK(s.prefactor_c == 4);
    CHECK(s.range_div == 2);
    for (long n = 0; n <= 8; ++n)
        CHECK(binom_sum_term(s, n) == binom_sum_term(catalog::zagier_e_spec(), n));
}

TEST_CASE("the order-six Hadamard product H37 has two log-free solutions") {
    GuessReport rep = hadamard_op(catalog::omega(3), catalog::omega(7), 6, 14, 150);
    REQUIRE(rep.op.has_value());
    CHECK(rep.op->order() == 6);
    CHECK(!is_mum(*rep.op));
    // "like" a MUM order-4 block plus an order-2 block: two analytic solutions,
    // so no single Frobenius ladder exists
    CHECK(log_free_solution_dim(*rep.op, 40) == 2);
    CHECK_THROWS_AS(frobenius_mum_basis(*rep.op, 20), domain_error);
}
