#pragma once

#include <string>
#include <vector>

#include "aerocap/guidance.hpp"
#include "aerocap/montecarlo.hpp"
#include "aerocap/scenario.hpp"

namespace aerocap {

// All CSV floats are written with 9 significant digits so output digests are
// stable across platforms.
std::string format_g9(double v);

void write_trace_csv(const std::string& path, const std::vector<TraceSample>& trace);
void write_guidance_log_csv(const std::string& path, const std::vector<GuidanceLogRow>& log);
void write_records_csv(const std::string& path, const std::vector<MonteCarloRecord>& records);
void write_stats_json(const std::string& path, const CampaignStats& stats,
                      const std::string& algorithm, const std::string& entry_set,
                      std::uint64_t master_seed);
void write_summary_json(const std::string& path, const RunSummary& summary,
                        const std::string& algorithm);

// Verbosity from the AEROCAP_LOG environment variable: quiet | info | debug.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace aerocap
