#pragma once

// CSV output shared with the plotting scripts: '.' decimal, ',' separator, one header row, LF
// line endings, reals printed with 12 significant digits.

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chiralwalk/evolution.hpp"
#include "chiralwalk/junction.hpp"
#include "chiralwalk/scattering.hpp"
#include "chiralwalk/transport.hpp"

namespace chiralwalk::csv {

inline constexpr int kSignificantDigits = 12;

std::string format_real(double v);

class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  Writer& cell(double v);
  Writer& cell(long long v);
  Writer& cell(int v) { return cell(static_cast<long long>(v)); }
  Writer& cell(std::string_view v);
  // Throws std::logic_error if the row width differs from the header.
  void end_row();

  std::size_t columns() const { return header_.size(); }

 private:
  void separator();

  std::ostream& out_;
  std::vector<std::string> header_;
  std::size_t filled_ = 0;
};

std::vector<std::string> trajectory_header(std::span<const int> chains);
const std::vector<std::string>& snapshot_header();
const std::vector<std::string>& sweep_header();
const std::vector<std::string>& spectrum_header();
const std::vector<std::string>& greens_header();

// t, n_<chain>...
void write_trajectory(std::ostream& out, std::span<const double> times,
                      std::span<const std::map<int, double>> densities);
// t, chain, site, density, phase (arg of the amplitude in (-pi, pi])
void write_snapshot(std::ostream& out, double t, const QuantumState& psi);
void write_sweep(std::ostream& out, std::span<const TransportRecord> records);
void write_spectrum(std::ostream& out, std::span<const SpectrumRow> rows);
void write_greens(std::ostream& out, const GreensTrace& trace);

// Splits on ',' with no quoting (none of the schemas need it).
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace chiralwalk::csv
