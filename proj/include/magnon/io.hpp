#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "magnon/fidelity.hpp"
#include "magnon/oracle_checks.hpp"
#include "magnon/protocols.hpp"
#include "magnon/sweeps.hpp"

namespace magnon::io {

// 17 significant digits, scientific; parses back to the identical double.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column `name` parsed as doubles (labels are not numbers; use rows directly).
  std::vector<double> column(const std::string &name) const;
};

CsvTable read_csv(std::istream &in);

// Long format: axis columns, then F, t_star, h_star.
void write_sweep_csv(std::ostream &out, const SweepResult &result);
// Axis definitions, every point, the overall argmax and the argmax along the
// last axis for each combination of the others.
std::string sweep_json(const SweepResult &result);

void write_trace_csv(std::ostream &out, const FidelityTrace &trace);
std::string peaks_json(const std::vector<Peak> &peaks);

// Columns i, t, F with i the last site of the receiving block.
void write_site_traces_csv(std::ostream &out, const std::vector<SiteTrace> &traces);
std::string site_traces_json(const std::vector<SiteTrace> &traces);

void write_propagator_csv(std::ostream &out, const PropagatorMatrix &prop);
std::string propagator_json(const PropagatorMatrix &prop);

void write_memory_csv(std::ostream &out, const MemoryProtocolResult &result);
std::string memory_json(const MemoryProtocolResult &result);

std::string dual_chain_json(const DualChainOutcome &outcome);
void write_dual_chain_csv(std::ostream &out, const DualChainOutcome &outcome);

std::string oracle_report_json(const std::vector<OracleCheck> &checks);
void write_oracle_report_csv(std::ostream &out, const std::vector<OracleCheck> &checks);

}  // namespace magnon::io
