#include "chiralwalk/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chiralwalk::csv {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                 kSignificantDigits);
  return std::string(buf, res.ptr);
}

Writer::Writer(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
  if (header_.empty()) throw std::logic_error("csv: empty header");
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out_ << ',';
    out_ << header_[i];
  }
  out_ << '\n';
}

void Writer::separator() {
  if (filled_ >= header_.size()) throw std::logic_error("csv: row wider than header");
  if (filled_++) out_ << ',';
}

Writer& Writer::cell(double v) {
  separator();
  out_ << format_real(v);
  return *this;
}

Writer& Writer::cell(long long v) {
  separator();
  out_ << v;
  return *this;
}

Writer& Writer::cell(std::string_view v) {
  separator();
  out_ << v;
  return *this;
}

void Writer::end_row() {
  if (filled_ != header_.size()) throw std::logic_error("csv: row narrower than header");
  out_ << '\n';
  filled_ = 0;
}

std::vector<std::string> trajectory_header(std::span<const int> chains) {
  std::vector<std::string> h{"t"};
  for (int c : chains) h.push_back("n_" + std::to_string(c));
  return h;
}

const std::vector<std::string>& snapshot_header() {
  static const std::vector<std::string> h{"t", "chain", "site", "density", "phase"};
  return h;
}

const std::vector<std::string>& sweep_header() {
  static const std::vector<std::string> h{"theta",  "n1_num", "n2_num", "n3_num",
                                          "n1_ana", "n2_ana", "n3_ana"};
  return h;
}

const std::vector<std::string>& spectrum_header() {
  static const std::vector<std::string> h{"theta", "nu", "eta", "energy", "is_edge_state"};
  return h;
}

const std::vector<std::string>& greens_header() {
  static const std::vector<std::string> h{"t", "T", "ReY", "ImY", "absY", "argY"};
  return h;
}

void write_trajectory(std::ostream& out, std::span<const double> times,
                      std::span<const std::map<int, double>> densities) {
  if (times.size() != densities.size()) {
    throw std::invalid_argument("write_trajectory: times and densities differ in length");
  }
  std::vector<int> chains;
  if (!densities.empty()) {
    for (const auto& [c, n] : densities.front()) chains.push_back(c);
  }
  Writer w(out, trajectory_header(chains));
  for (std::size_t i = 0; i < times.size(); ++i) {
    w.cell(times[i]);
    for (int c : chains) w.cell(densities[i].at(c));
    w.end_row();
  }
}

void write_snapshot(std::ostream& out, double t, const QuantumState& psi) {
  Writer w(out, snapshot_header());
  const PhasedGraph& g = psi.graph();
  for (int c : g.chains()) {
    for (std::size_t idx : g.chain_indices(c)) {
      const Complex a = psi.amplitudes()(static_cast<Eigen::Index>(idx));
      w.cell(t).cell(c).cell(g.site_at(idx).site).cell(std::norm(a)).cell(std::arg(a));
      w.end_row();
    }
  }
}

void write_sweep(std::ostream& out, std::span<const TransportRecord> records) {
  Writer w(out, sweep_header());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : records) {
    w.cell(r.theta);
    for (std::size_t l = 0; l < 3; ++l) w.cell(r.numeric ? (*r.numeric)[l] : nan);
    for (std::size_t l = 0; l < 3; ++l) w.cell(r.analytic ? (*r.analytic)[l] : nan);
    w.end_row();
  }
}

void write_spectrum(std::ostream& out, std::span<const SpectrumRow> rows) {
  Writer w(out, spectrum_header());
  for (const auto& r : rows) {
    w.cell(r.theta).cell(r.nu).cell(r.eta).cell(r.energy).cell(r.is_edge_state ? 1 : 0);
    w.end_row();
  }
}

void write_greens(std::ostream& out, const GreensTrace& trace) {
  Writer w(out, greens_header());
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const Complex y = trace.values[i];
    w.cell(trace.times[i]).cell(trace.rescaled[i]).cell(y.real()).cell(y.imag());
    w.cell(std::abs(y)).cell(std::arg(y));
    w.end_row();
  }
}

std::vector<std::vector<std::string>> parse(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return rows;
}

}  // namespace chiralwalk::csv
