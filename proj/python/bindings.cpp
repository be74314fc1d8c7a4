#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magnon/chain_model.hpp"
#include "magnon/encodings.hpp"
#include "magnon/errors.hpp"
#include "magnon/fidelity.hpp"
#include "magnon/magnon_dynamics.hpp"
#include "magnon/oracle_checks.hpp"
#include "magnon/protocols.hpp"
#include "magnon/sweeps.hpp"

namespace py = pybind11;
using namespace magnon;

namespace {

// States cross the boundary as {tuple(sites): amplitude}.
ExcitationState state_from_dict(int n, const std::map<std::vector<int>, Complex> &amps) {
  ExcitationState s(n);
  for (const auto &[sites, a] : amps) s.add(Configuration(std::span<const int>(sites)), a);
  return s;
}

py::dict state_to_dict(const ExcitationState &s) {
  py::dict out;
  for (const auto &[c, a] : s.amplitudes()) {
    py::tuple key(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) key[i] = c[i];
    out[key] = a;
  }
  return out;
}

py::dict sweep_to_dict(const SweepResult &r) {
  py::dict d;
  py::list axes;
  for (const auto &a : r.axes) {
    py::dict ax;
    ax["name"] = a.name;
    ax["values"] = a.values;
    ax["labels"] = a.labels;
    axes.append(ax);
  }
  d["axes"] = axes;
  d["values"] = r.values;
  d["t_star"] = r.t_star;
  d["h_star"] = r.h_star;
  return d;
}

SweepSpec make_spec(const std::vector<std::string> &encodings, const std::vector<int> &n_values,
                    const std::vector<double> &thetas, double phi, double t_max, double t_step, double h_max,
                    double h_step, double j, double h, bool refine) {
  SweepSpec spec = SweepSpec::defaults();
  spec.encodings.clear();
  for (const auto &e : encodings) spec.encodings.push_back(parse_encoding(e));
  spec.n_values = n_values;
  if (!thetas.empty()) spec.thetas = thetas;
  spec.phi = phi;
  spec.times = uniform_grid(0.0, t_max, t_step);
  spec.h_values = uniform_grid(0.0, h_max, h_step);
  spec.j_xy = j;
  spec.h_field = h;
  spec.refine = refine;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Magnon-picture state transfer through XY spin chains";

  auto base = py::register_exception<Error>(m, "MagnonError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

  py::class_<ChainParams>(m, "ChainParams")
      .def(py::init([](int n, double j, double jz, double h) {
             ChainParams p{n, j, jz, h};
             p.validate();
             return p;
           }),
           py::arg("n_sites"), py::arg("j") = 1.0, py::arg("jz") = 0.0, py::arg("h") = 1.0)
      .def_readwrite("n_sites", &ChainParams::n_sites)
      .def_readwrite("j", &ChainParams::j_xy)
      .def_readwrite("jz", &ChainParams::j_z)
      .def_readwrite("h", &ChainParams::h_field)
      .def("__repr__", [](const ChainParams &p) {
        return "ChainParams(n_sites=" + std::to_string(p.n_sites) + ", j=" + std::to_string(p.j_xy) +
               ", jz=" + std::to_string(p.j_z) + ", h=" + std::to_string(p.h_field) + ")";
      });

  m.def("encodings", [] {
    std::vector<std::string> names;
    for (auto e : all_encodings()) names.emplace_back(to_string(e));
    return names;
  });

  m.def("mode_energies", [](const ChainParams &p) {
    std::vector<double> e;
    for (const auto &mode : magnon_modes(p)) e.push_back(mode.energy);
    return e;
  });

  m.def("propagator", [](const ChainParams &p, double t) { return propagator(p, t).dense(); }, py::arg("params"),
        py::arg("t"), "Dense N x N matrix f_{j,l}(t) (0-based indices).");

  m.def(
      "logical_state",
      [](const std::string &encoding, int n, double theta, double phi, bool at_end) {
        const LogicalEncoding enc(parse_encoding(encoding));
        const BlochState b{theta, phi};
        return state_to_dict(at_end ? target_state(enc, b, n) : logical_state(enc, b, Placement::Start, n));
      },
      py::arg("encoding"), py::arg("n"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("at_end") = false);

  m.def(
      "evolve",
      [](const ChainParams &p, const std::map<std::vector<int>, Complex> &state, double t) {
        return state_to_dict(evolve(state_from_dict(p.n_sites, state), p, t));
      },
      py::arg("params"), py::arg("state"), py::arg("t"));

  m.def(
      "transfer_fidelity",
      [](const ChainParams &p, const std::string &encoding, double theta, double phi, double t) {
        const LogicalEncoding enc(parse_encoding(encoding));
        const BlochState b{theta, phi};
        const int n = p.n_sites;
        return fidelity(evolve(logical_state(enc, b, Placement::Start, n), p, t), target_state(enc, b, n),
                        block_sites(enc, Placement::End, n));
      },
      py::arg("params"), py::arg("encoding"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("t"));

  m.def(
      "fidelity_trace",
      [](const ChainParams &p, const std::string &encoding, double theta, double phi, const std::vector<double> &times,
         double prominence) {
        const LogicalEncoding enc(parse_encoding(encoding));
        const BlochState b{theta, phi};
        const int n = p.n_sites;
        const FidelityTrace tr = fidelity_trace(ModeTable(p), logical_state(enc, b, Placement::Start, n),
                                                target_state(enc, b, n), block_sites(enc, Placement::End, n), times,
                                                prominence);
        std::vector<std::pair<double, double>> peaks;
        for (const auto &pk : tr.peaks) peaks.emplace_back(pk.time, pk.value);
        return py::make_tuple(tr.values, peaks);
      },
      py::arg("params"), py::arg("encoding"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("times"),
      py::arg("prominence") = 0.02, "Returns (F values, [(t_k, F_k), ...]).");

  m.def(
      "average_fidelity",
      [](const ChainParams &p, const std::string &encoding, double t) {
        const LogicalEncoding enc(parse_encoding(encoding));
        const PropagatorMatrix prop = propagator(p, t);
        if (enc.name() == EncodingName::VacuumSinglet) return average_fidelity_closed_form(prop);
        if (enc.name() == EncodingName::SingleSpin) return single_spin_average_fidelity(prop);
        return transfer_map(enc, prop).average_fidelity();
      },
      py::arg("params"), py::arg("encoding") = "vacuum-singlet", py::arg("t"),
      "Bloch-sphere average of F^2 at time t.");

  m.def(
      "max_fidelity_vs_length",
      [](const std::vector<std::string> &encodings, const std::vector<int> &n_values, double theta, double t_max,
         double t_step, bool refine) {
        return sweep_to_dict(max_fidelity_vs_length(
            make_spec(encodings, n_values, {theta}, 0.0, t_max, t_step, 2.0, 0.05, 1.0, 1.0, refine)));
      },
      py::arg("encodings"), py::arg("n_values"), py::arg("theta") = 1.5707963267948966, py::arg("t_max") = 100.0,
      py::arg("t_step") = 0.05, py::arg("refine") = true);

  m.def(
      "max_fidelity_surface",
      [](const std::string &encoding, const std::vector<int> &n_values, const std::vector<double> &thetas,
         double t_max, double t_step, bool refine) {
        return sweep_to_dict(max_fidelity_surface(
            make_spec({encoding}, n_values, thetas, 0.0, t_max, t_step, 2.0, 0.05, 1.0, 1.0, refine)));
      },
      py::arg("encoding"), py::arg("n_values"), py::arg("thetas") = std::vector<double>{}, py::arg("t_max") = 100.0,
      py::arg("t_step") = 0.05, py::arg("refine") = true);

  m.def(
      "avg_fidelity_vs_length",
      [](const std::vector<std::string> &encodings, const std::vector<int> &n_values, double t_max, double t_step,
         double h_max, double h_step, bool refine) {
        return sweep_to_dict(avg_fidelity_vs_length(
            make_spec(encodings, n_values, {}, 0.0, t_max, t_step, h_max, h_step, 1.0, 1.0, refine)));
      },
      py::arg("encodings"), py::arg("n_values"), py::arg("t_max") = 100.0, py::arg("t_step") = 0.05,
      py::arg("h_max") = 2.0, py::arg("h_step") = 0.05, py::arg("refine") = true);

  m.def(
      "memory_protocol",
      [](const ChainParams &p, const std::string &encoding, double theta, double phi,
         const std::vector<double> &swap_times, bool exact) {
        const LogicalEncoding enc(parse_encoding(encoding));
        const BlochState b{theta, phi};
        const auto r = exact ? memory_protocol_exact(p, enc, b, swap_times) : memory_protocol(p, enc, b, swap_times);
        py::dict d;
        d["swap_times"] = r.swap_times;
        d["etas"] = r.etas;
        d["cumulative"] = r.cumulative_success;
        return d;
      },
      py::arg("params"), py::arg("encoding"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("swap_times"),
      py::arg("exact") = false);

  m.def(
      "dual_chain_protocol",
      [](const ChainParams &p, double theta, double phi, double t_wait, bool exact) {
        const BlochState b{theta, phi};
        const auto o = exact ? dual_chain_protocol_exact(p, b, t_wait) : dual_chain_protocol(p, b, t_wait);
        py::dict d;
        d["p_confirm"] = o.p_confirm;
        d["f_conditioned"] = o.f_conditioned;
        d["f_unconditioned"] = o.f_unconditioned;
        d["f_single_chain"] = o.f_single_chain;
        d["leakage"] = o.leakage;
        d["outcome_probabilities"] = o.outcome_probabilities;
        return d;
      },
      py::arg("params"), py::arg("theta"), py::arg("phi") = 0.0, py::arg("t_wait"), py::arg("exact") = false);

  m.def("logical_x", &logical_x);

  m.def(
      "verify_oracle",
      [](int n, int trials, std::uint64_t seed) {
        py::list out;
        for (const auto &c : run_oracle_checks(n, trials, seed)) {
          py::dict d;
          d["name"] = c.name;
          d["max_deviation"] = c.max_deviation;
          d["tolerance"] = c.tolerance;
          d["passed"] = c.passed;
          out.append(d);
        }
        return out;
      },
      py::arg("n") = 8, py::arg("trials") = 20, py::arg("seed") = 7);
}
