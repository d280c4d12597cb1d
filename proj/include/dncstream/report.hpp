// report.hpp - Deterministic CSV / JSON serialization of run and sweep results.
//
// Reals are printed with 9 significant digits ("%.9g"); absent values are empty CSV fields and
// JSON null. CSV files are UTF-8, comma separated, LF line endings, with a header row.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "dncstream/sim.hpp"
#include "dncstream/sweep.hpp"

namespace dncstream::report {

inline constexpr std::string_view clients_csv_header =
    "client_id,arrival_s,duration_s,access_switch,accepted,quality_bps,mean_session_quality_bps,"
    "cumulative_rebuffering_s,path";

inline constexpr std::string_view sweep_csv_header =
    "load,mode,seed,rejection_probability,mean_quality,q05,q95,max_client_rebuffering,total_rebuffering";

std::string format_real(double value);
std::string format_real(const std::optional<double>& value);

void write_clients_csv(std::ostream& out, std::span<const sim::ClientRecord> clients);
void write_sweep_csv(std::ostream& out, std::span<const sweep::SweepRow> rows);
// Pretty-printed JSON mirroring RunSummary, including the per-client records.
std::string summary_json(const sim::RunSummary& summary);

}  // namespace dncstream::report
