#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "chiralwalk/cli.hpp"
#include "chiralwalk/csv.hpp"
#include "chiralwalk/error.hpp"
#include "chiralwalk/junction.hpp"
#include "chiralwalk/scattering.hpp"
#include "chiralwalk/transport.hpp"

namespace chiralwalk::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

// Writes to the configured file, or to `fallback` when no path is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : target_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidArgument("cannot open output file '" + path + "'");
      target_ = &file_;
    }
  }
  std::ostream& stream() { return *target_; }

 private:
  std::ofstream file_;
  std::ostream* target_;
};

std::string fmt(double v) { return csv::format_real(v); }

GraphPtr make_graph(const RunConfig& c) {
  PhasedGraph g = [&] {
    if (c.topology == "chain") return build_open_chain(c.n_sites);
    if (c.topology == "khalique") return build_khalique_chain(c.n_sites);
    if (c.topology == "y") return build_y_junction(c.n_sites, c.theta);
    if (c.topology == "y-ring") return build_y_ring_composite(c.n_sites, c.theta);
    return build_binary_tree(c.depth, c.n_sites, c.theta);
  }();
  return std::make_shared<const PhasedGraph>(std::move(g));
}

int default_chain(const RunConfig& c) {
  if (c.chain) return *c.chain;
  if (c.topology == "tree") return 0;
  if (c.topology == "y-ring") return 3;
  return 1;
}

WavePacketSpec make_packet_spec(const RunConfig& c, int n_sites, int chain) {
  WavePacketSpec p = c.packet == "square" ? WavePacketSpec::square_default(n_sites, chain)
                                          : WavePacketSpec::gaussian_default(n_sites, chain);
  p.k0 = c.k0;
  if (c.n0) p.n0 = *c.n0;
  if (c.sigma) p.sigma = *c.sigma;
  if (p.kind == PacketKind::Square) {
    if (c.n0 && !c.support_lo && !c.support_hi) {
      const int half = n_sites / 4;
      p.support_lo = static_cast<int>(std::lround(*c.n0)) - half;
      p.support_hi = static_cast<int>(std::lround(*c.n0)) + half;
    }
    if (c.support_lo) p.support_lo = *c.support_lo;
    if (c.support_hi) p.support_hi = *c.support_hi;
    p.n0 = 0.5 * (p.support_lo + p.support_hi);
  }
  return p;
}

std::vector<double> time_grid(const RunConfig& c, double default_t_max) {
  const double t_max = c.t_max.value_or(default_t_max);
  const auto steps = static_cast<long>(std::floor(t_max / c.dt + 1e-9));
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) ts.push_back(static_cast<double>(i) * c.dt);
  return ts;
}

double default_t_max(int n_sites, double k0) {
  const double vg = std::abs(dispersion(k0).group_velocity);
  return vg > 1e-3 ? 2.0 * n_sites / vg : static_cast<double>(n_sites);
}

int cmd_build(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const GraphPtr g = make_graph(c);
  Sink sink(c.out, out);
  sink.stream() << graph_to_json(*g, 2) << '\n';
  summary << "built " << to_string(g->topology()) << ": " << g->size() << " sites, "
          << g->edges().size() << " edges\n";
  return kOk;
}

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const GraphPtr g = make_graph(c);
  const int chain = default_chain(c);
  const WavePacketSpec spec = make_packet_spec(c, g->chain_length(chain), chain);
  const QuantumState psi0 = make_packet(g, spec);
  const EigenSystem es = eig_hermitian(assemble_hamiltonian(*g));
  const std::vector<double> ts = time_grid(c, default_t_max(c.n_sites, c.k0));
  const std::vector<QuantumState> states = evolve_many(es, psi0, ts, c.jobs);
  std::vector<std::map<int, double>> dens;
  dens.reserve(states.size());
  for (const auto& s : states) dens.push_back(chain_densities(s));

  {
    Sink sink(c.out, out);
    if (c.format == "csv") {
      csv::write_trajectory(sink.stream(), ts, dens);
    } else {
      json j{{"t", ts}, {"densities", json::object()}};
      for (const auto& [chain_id, n] : dens.front()) {
        std::vector<double> series;
        for (const auto& d : dens) series.push_back(d.at(chain_id));
        j["densities"][std::to_string(chain_id)] = series;
      }
      sink.stream() << j.dump(2) << '\n';
    }
  }
  if (!c.snapshots.empty()) {
    if (c.snapshot_out.empty()) throw InvalidArgument("--snapshot needs --snapshot-out");
    Sink sink(c.snapshot_out, out);
    const std::vector<QuantumState> snaps = evolve_many(es, psi0, c.snapshots, c.jobs);
    std::ostringstream body;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      std::ostringstream one;
      csv::write_snapshot(one, c.snapshots[i], snaps[i]);
      std::string text = one.str();
      if (i > 0) text.erase(0, text.find('\n') + 1);  // one header for the whole file
      body << text;
    }
    sink.stream() << body.str();
  }
  summary << "t=" << fmt(ts.back());
  for (const auto& [chain_id, n] : dens.back()) summary << " n_" << chain_id << "=" << fmt(n);
  summary << '\n';
  return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const WavePacketSpec spec = make_packet_spec(c, c.n_sites, 1);
  const std::vector<double> grid = linear_grid(-kPi, kPi, c.grid);
  const auto records = sweep_theta(c.n_sites, spec, grid, sweep_mode_from_string(c.mode), c.jobs);
  Sink sink(c.out, out);
  if (c.format == "csv") {
    csv::write_sweep(sink.stream(), records);
  } else {
    json arr = json::array();
    for (const auto& r : records) {
      json rec{{"theta", r.theta}, {"k0", r.k0}};
      if (r.numeric) rec["numeric"] = *r.numeric;
      if (r.analytic) rec["analytic"] = *r.analytic;
      if (r.numeric) rec["t_measure"] = r.t_measure;
      arr.push_back(rec);
    }
    sink.stream() << arr.dump(2) << '\n';
  }
  double worst = 0.0;
  for (const auto& r : records) {
    if (r.numeric && r.analytic) {
      for (std::size_t l = 0; l < 3; ++l) worst = std::max(worst, std::abs((*r.numeric)[l] - (*r.analytic)[l]));
    }
  }
  summary << records.size() << " sweep points";
  if (c.mode == "both") summary << ", max |numeric - analytic| = " << fmt(worst);
  summary << '\n';
  return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const std::vector<double> grid = linear_grid(-kPi, kPi, c.theta_grid);
  const auto rows = spectrum_rows(c.n_sites, grid);
  Sink sink(c.out, out);
  if (c.format == "csv") {
    csv::write_spectrum(sink.stream(), rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"theta", r.theta}, {"nu", r.nu}, {"eta", r.eta}, {"energy", r.energy},
                     {"is_edge_state", r.is_edge_state}});
    }
    sink.stream() << arr.dump(2) << '\n';
  }
  std::size_t edges = 0;
  for (const auto& r : rows) edges += r.is_edge_state ? 1 : 0;
  summary << rows.size() << " levels, " << edges << " edge states\n";
  return kOk;
}

int cmd_scatter(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  ScatteringParams p = ScatteringParams::defaults(c.n_sites, c.omega);
  p.k0 = c.k0;
  if (c.n0) p.n0 = *c.n0;
  if (c.sigma) p.sigma = *c.sigma;
  p.validate();
  const std::vector<double> ts = time_grid(c, 2.0 * default_t_max(c.n_sites, c.k0));
  const GreensTrace trace =
      greens_trace(p, ts, c.source == "analytic" ? GreensSource::Analytic : GreensSource::Numeric);
  Sink sink(c.out, out);
  if (c.format == "csv") {
    csv::write_greens(sink.stream(), trace);
  } else {
    json j{{"t", trace.times}, {"T", trace.rescaled}, {"re", json::array()}, {"im", json::array()}};
    for (const Complex& y : trace.values) {
      j["re"].push_back(y.real());
      j["im"].push_back(y.imag());
    }
    j["delta"] = p.delta();
    sink.stream() << j.dump(2) << '\n';
  }
  summary << "delta=" << fmt(p.delta()) << " Y(t_end)=" << fmt(trace.values.back().real())
          << (trace.values.back().imag() < 0 ? "" : "+") << fmt(trace.values.back().imag()) << "i\n";
  return kOk;
}

int cmd_tree(const RunConfig& c, std::ostream& out, std::ostream& summary) {
  const RoutingReport report = c.topology == "y-ring"
                                   ? ring_route_demo(c.n_sites, c.theta, c.k0)
                                   : tree_route_demo(c.depth, c.n_sites, c.theta, c.k0, c.path);
  Sink sink(c.out, out);
  sink.stream() << routing_report_to_json(report) << '\n';
  for (const auto& w : report.warnings) summary << "warning: " << w << '\n';
  summary << "route " << (report.success() ? "followed" : "not followed");
  if (report.target_chain) {
    summary << ", target chain " << *report.target_chain << " density "
            << fmt(report.checkpoints.back().densities.at(*report.target_chain));
  }
  summary << '\n';
  return kOk;
}

int cmd_selftest(const RunConfig& c, std::ostream& summary) {
  SelftestOptions opt;
  opt.quick = c.quick;
  opt.corrupt_hamiltonian = c.inject_fault;
  opt.seed = c.seed;
  const auto results = selftest(opt);
  bool ok = true;
  for (const auto& r : results) {
    summary << (r.passed ? "PASS " : "FAIL ") << r.name << " residual=" << fmt(r.residual)
            << " tol=" << fmt(r.tolerance) << '\n';
    ok = ok && r.passed;
  }
  return ok ? kOk : kSelftestFailed;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    // Artifacts written to stdout keep the summary off it.
    std::ostream& summary = c.out.empty() && c.command != "selftest" ? err : out;
    if (c.command == "build") return cmd_build(c, out, summary);
    if (c.command == "evolve") return cmd_evolve(c, out, summary);
    if (c.command == "sweep") return cmd_sweep(c, out, summary);
    if (c.command == "spectrum") return cmd_spectrum(c, out, summary);
    if (c.command == "scatter") return cmd_scatter(c, out, summary);
    if (c.command == "tree") return cmd_tree(c, out, summary);
    return cmd_selftest(c, summary);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgument;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace chiralwalk::cli
