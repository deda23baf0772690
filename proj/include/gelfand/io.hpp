// CSV and SVG emission shared by the CLI and tests. All floats are written with
// 12 significant digits, '.' decimal separator, LF line endings, so identical
// inputs produce byte-identical files.
#pragma once

#include <string>
#include <vector>

#include "gelfand/continuation.hpp"
#include "gelfand/parabolic.hpp"
#include "gelfand/stationary.hpp"

namespace gelfand {

std::string format_sig(double v);  // %.12g, locale-independent

// header "x,u,v", one row per interior node. Optional "# t=<...>" metadata
// comment line before the header (used for evolution snapshots).
void write_state_csv(const std::string& path, const TwoPhaseState& s,
                     const double* snapshot_time = nullptr);

// header "nu,lambda_star,bracket_width"; failed entries are skipped.
void write_sweep_csv(const std::string& path, const SweepResult& sweep);

// header "t,max_u,max_v,energy,dt".
void write_trace_csv(const std::string& path, const EvolveReport& report);

// header "x,phi1".
void write_eigen_csv(const std::string& path, const Field& phi1);

// Reads a state CSV (x,u,v) back onto the given grid; '#' lines are skipped.
// Throws std::runtime_error on malformed input or node-count mismatch.
TwoPhaseState read_state_csv(const std::string& path, const Grid& grid);

// Minimal static SVG 1.1 line plots (no external tooling).
struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color = "#1f4e9c";
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotSpec& spec);

}  // namespace gelfand
