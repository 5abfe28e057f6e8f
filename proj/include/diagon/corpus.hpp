#pragma once

#include <string>
#include <vector>

#include "diagon/jsonio.hpp"

namespace diagon {

// One verification job: inputs, expected output and a provenance note (the
// literature object it reproduces, or the oracle that generated it).
struct CorpusEntry {
    std::string id;
    std::string ref;   // provenance note
    std::string kind;  // diagonal | product | integrality | modp | guess |
                       // operator-transform | modularity | identity | curve
    Json spec;
};

struct EntryResult {
    std::string id;
    bool ok = false;
    std::string detail;
    double wall_ms = 0;
};

struct RunReport {
    std::vector<EntryResult> results;
    int total = 0, failed = 0;
    Json to_json(bool with_timing = true) const;
    std::string to_text() const;
};

std::vector<CorpusEntry> load_corpus(const std::string& path);

// named operators available to corpus entries and the CLI
LinDiffOp catalog_operator(const std::string& name);

USeries series_from_spec(const Json& spec, int trunc);
LinDiffOp op_from_spec(const Json& spec);

EntryResult run_entry(const CorpusEntry& e);
RunReport run_corpus(const std::vector<CorpusEntry>& entries, const std::string& filter,
                     int jobs);

}  // namespace diagon
