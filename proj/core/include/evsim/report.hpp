#pragma once

#include <span>
#include <string>

#include "evsim/engine.hpp"
#include "evsim/metrics.hpp"
#include "evsim/scenario.hpp"

namespace evsim {

// Deterministic text renderings of run artifacts. Numbers are printed with
// %.10g so identical runs produce byte-identical files.
std::string customers_csv(const RunResult& result, const ScenarioConfig& cfg);
std::string stations_csv(const RunResult& result);
std::string arrival_rates_csv(const RunResult& result);

// Summary of every replication plus mean/sd aggregates when there are several.
std::string summary_json_text(std::span<const RunSummary> summaries, const ScenarioConfig& cfg);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace evsim
