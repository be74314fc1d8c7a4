#include "magnon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "magnon/errors.hpp"

namespace magnon::io {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<std::string> split_line(const std::string &line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string axis_cell(const SweepAxis &axis, std::size_t i) {
  return axis.labels.empty() ? format_double(axis.values[i]) : axis.labels[i];
}

json axis_value(const SweepAxis &axis, std::size_t i) {
  return axis.labels.empty() ? json(axis.values[i]) : json(axis.labels[i]);
}

// Multi-index of flat position `flat` (row-major).
std::vector<std::size_t> unflatten(const SweepResult &r, std::size_t flat) {
  std::vector<std::size_t> idx(r.axes.size());
  for (std::size_t a = r.axes.size(); a-- > 0;) {
    const std::size_t len = r.axes[a].values.size();
    idx[a] = flat % len;
    flat /= len;
  }
  return idx;
}

json point_record(const SweepResult &r, std::size_t flat) {
  json rec;
  const auto idx = unflatten(r, flat);
  for (std::size_t a = 0; a < r.axes.size(); ++a) rec[r.axes[a].name] = axis_value(r.axes[a], idx[a]);
  rec["F"] = number(r.values[flat]);
  rec["t_star"] = number(r.t_star[flat]);
  rec["h_star"] = number(r.h_star[flat]);
  return rec;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::vector<double> CsvTable::column(const std::string &name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ValidationError("no CSV column named " + name);
  const auto c = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto &row : rows) out.push_back(std::strtod(row.at(c).c_str(), nullptr));
  return out;
}

CsvTable read_csv(std::istream &in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) throw ValidationError("ragged CSV row");
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_sweep_csv(std::ostream &out, const SweepResult &r) {
  for (const auto &axis : r.axes) out << axis.name << ',';
  out << "F,t_star,h_star\n";
  for (std::size_t flat = 0; flat < r.size(); ++flat) {
    const auto idx = unflatten(r, flat);
    for (std::size_t a = 0; a < r.axes.size(); ++a) out << axis_cell(r.axes[a], idx[a]) << ',';
    out << format_double(r.values[flat]) << ',' << format_double(r.t_star[flat]) << ','
        << format_double(r.h_star[flat]) << '\n';
  }
}

std::string sweep_json(const SweepResult &r) {
  json doc;
  doc["axes"] = json::array();
  for (const auto &axis : r.axes) {
    json a{{"name", axis.name}, {"values", axis.values}};
    if (!axis.labels.empty()) a["labels"] = axis.labels;
    doc["axes"].push_back(a);
  }
  doc["points"] = json::array();
  for (std::size_t flat = 0; flat < r.size(); ++flat) doc["points"].push_back(point_record(r, flat));

  if (r.size() > 0) {
    const auto best = static_cast<std::size_t>(std::max_element(r.values.begin(), r.values.end()) - r.values.begin());
    doc["argmax"] = point_record(r, best);
    const std::size_t inner = r.axes.back().values.size();
    doc["argmax_along_" + r.axes.back().name] = json::array();
    for (std::size_t base = 0; base < r.size(); base += inner) {
      std::size_t arg = base;
      for (std::size_t k = base; k < base + inner; ++k) {
        if (r.values[k] > r.values[arg]) arg = k;
      }
      doc["argmax_along_" + r.axes.back().name].push_back(point_record(r, arg));
    }
  }
  return doc.dump(2);
}

void write_trace_csv(std::ostream &out, const FidelityTrace &trace) {
  out << "t,F\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << format_double(trace.times[i]) << ',' << format_double(trace.values[i]) << '\n';
  }
}

std::string peaks_json(const std::vector<Peak> &peaks) {
  json arr = json::array();
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    arr.push_back({{"k", k + 1}, {"t_k", peaks[k].time}, {"F_k", peaks[k].value}});
  }
  return arr.dump(2);
}

void write_site_traces_csv(std::ostream &out, const std::vector<SiteTrace> &traces) {
  out << "i,t,F\n";
  for (const auto &st : traces) {
    for (std::size_t k = 0; k < st.trace.times.size(); ++k) {
      out << st.site << ',' << format_double(st.trace.times[k]) << ',' << format_double(st.trace.values[k]) << '\n';
    }
  }
}

std::string site_traces_json(const std::vector<SiteTrace> &traces) {
  json arr = json::array();
  for (const auto &st : traces) {
    arr.push_back({{"i", st.site}, {"peaks", json::parse(peaks_json(st.trace.peaks))}});
  }
  return json{{"traces", arr}}.dump(2);
}

void write_propagator_csv(std::ostream &out, const PropagatorMatrix &prop) {
  out << "j,l,re,im,abs\n";
  const Eigen::MatrixXcd f = prop.dense();
  for (int j = 0; j < f.rows(); ++j) {
    for (int l = 0; l < f.cols(); ++l) {
      const auto z = f(j, l);
      out << j + 1 << ',' << l + 1 << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
          << format_double(std::abs(z)) << '\n';
    }
  }
}

std::string propagator_json(const PropagatorMatrix &prop) {
  const Eigen::MatrixXcd f = prop.dense();
  json re = json::array(), im = json::array();
  for (int j = 0; j < f.rows(); ++j) {
    std::vector<double> r, i;
    for (int l = 0; l < f.cols(); ++l) {
      r.push_back(f(j, l).real());
      i.push_back(f(j, l).imag());
    }
    re.push_back(r);
    im.push_back(i);
  }
  return json{{"n", prop.n_sites()}, {"t", prop.time()}, {"re", re}, {"im", im}}.dump(2);
}

void write_memory_csv(std::ostream &out, const MemoryProtocolResult &r) {
  out << "k,t,eta,cumulative_success\n";
  for (std::size_t k = 0; k < r.swap_times.size(); ++k) {
    out << k + 1 << ',' << format_double(r.swap_times[k]) << ',' << format_double(r.etas[k]) << ','
        << format_double(r.cumulative_success[k]) << '\n';
  }
}

std::string memory_json(const MemoryProtocolResult &r) {
  return json{{"swap_times", r.swap_times}, {"etas", r.etas}, {"cumulative", r.cumulative_success}}.dump(2);
}

std::string dual_chain_json(const DualChainOutcome &o) {
  return json{{"p_confirm", o.p_confirm},
              {"f_conditioned", o.f_conditioned},
              {"f_unconditioned", o.f_unconditioned},
              {"f_single_chain", o.f_single_chain},
              {"leakage", o.leakage},
              {"outcome_probabilities", o.outcome_probabilities}}
      .dump(2);
}

void write_dual_chain_csv(std::ostream &out, const DualChainOutcome &o) {
  out << "quantity,value\n";
  out << "p_confirm," << format_double(o.p_confirm) << '\n';
  out << "f_conditioned," << format_double(o.f_conditioned) << '\n';
  out << "f_unconditioned," << format_double(o.f_unconditioned) << '\n';
  out << "f_single_chain," << format_double(o.f_single_chain) << '\n';
  out << "leakage," << format_double(o.leakage) << '\n';
}

std::string oracle_report_json(const std::vector<OracleCheck> &checks) {
  json arr = json::array();
  bool all = true;
  for (const auto &c : checks) {
    arr.push_back({{"name", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    all = all && c.passed;
  }
  return json{{"checks", arr}, {"passed", all}}.dump(2);
}

void write_oracle_report_csv(std::ostream &out, const std::vector<OracleCheck> &checks) {
  out << "check,max_deviation,tolerance,passed\n";
  for (const auto &c : checks) {
    out << c.name << ',' << format_double(c.max_deviation) << ',' << format_double(c.tolerance) << ','
        << (c.passed ? "true" : "false") << '\n';
  }
}

}  // namespace magnon::io
