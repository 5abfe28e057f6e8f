#pragma once

#include <json.hpp>

#include "diagon/diagonal.hpp"
#include "diagon/dfinite.hpp"
#include "diagon/integrality.hpp"
#include "diagon/modp.hpp"

namespace diagon {

using Json = nlohmann::json;

Json series_to_json(const USeries& s);
USeries series_from_json(const Json& j);

// a JSON list of coefficient polynomials as decimal-string coefficient arrays
Json op_to_json(const LinDiffOp& L);
LinDiffOp op_from_json(const Json& j);

Json verdict_to_json(const IntegralityVerdict& v);

Json relation_to_json(const AlgRelation& r);

BinomSumSpec binom_spec_from_json(const Json& j);

Json guess_report_to_json(const GuessReport& r);

}  // namespace diagon
