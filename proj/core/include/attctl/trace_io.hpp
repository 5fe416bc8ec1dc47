#pragma once

#include <string>

#include "attctl/analysis.hpp"
#include "attctl/sim.hpp"

namespace attctl {

/// Write the trace as delimited text: a `# config_hash …` comment line, one
/// header row, then one row per record in fixed column order. Output is
/// deterministic: identical traces produce byte-identical files.
void write_trace(const Trace& trace, const std::string& path);

/// Read a trace written by write_trace (records + config hash; the event log
/// is reconstructed from the mode column). Throws parse_error on malformed
/// input. Summary fields are recomputed by the caller via SimEngine rules —
/// this function restores records/events/hash and the summary statistics
/// that derive from records.
Trace read_trace(const std::string& path);

/// Recompute the summary statistics of a trace from its records and events
/// (used after read_trace; mirrors the simulator's summary pass).
void recompute_summary(Trace& trace, const ScenarioConfig& config);

/// Write the event log: t, transition (ON/OFF), reason (ACT/PAS/ENV).
void write_events(const Trace& trace, const std::string& path);

/// Write the run summary and analysis report as a JSON document.
void write_summary(const Trace& trace, const AnalysisReport* analysis,
                   const std::string& path);

/// Write per-figure plot data files into `dir`:
///   fig1_attitude_error.dat   t, q1..q3, ±ρ1..ρ3
///   fig2_angular_velocity.dat t, ω1..ω3, ‖ω‖
///   fig3_control_torque.dat   t, u_act, u_cmd
///   fig4_trigger_mode.dat     t, mode
///   fig5_storage_ceiling.dat  t, V2, S2
void write_figure_data(const Trace& trace, const std::string& dir);

}  // namespace attctl
