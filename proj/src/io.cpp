#include "gelfand/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gelfand {

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_state_csv(const std::string& path, const TwoPhaseState& s,
                     const double* snapshot_time) {
    if (!same_grid(s.u, s.v)) throw std::invalid_argument("write_state_csv: grid mismatch");
    auto out = open_out(path);
    if (snapshot_time) out << "# t=" << format_sig(*snapshot_time) << "\n";
    out << "x,u,v\n";
    const Grid& g = *s.u.grid;
    for (int i = 0; i < g.n; ++i)
        out << format_sig(g.nodes[i]) << ',' << format_sig(s.u.values[i]) << ','
            << format_sig(s.v.values[i]) << '\n';
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    auto out = open_out(path);
    out << "nu,lambda_star,bracket_width\n";
    for (const auto& e : sweep.entries) {
        if (!e.ok) continue;
        out << format_sig(e.nu) << ',' << format_sig(e.lambda_star) << ','
            << format_sig(e.bracket_width) << '\n';
    }
}

void write_trace_csv(const std::string& path, const EvolveReport& report) {
    auto out = open_out(path);
    out << "t,max_u,max_v,energy,dt\n";
    for (const auto& s : report.trace)
        out << format_sig(s.t) << ',' << format_sig(s.max_u) << ',' << format_sig(s.max_v)
            << ',' << format_sig(s.energy) << ',' << format_sig(s.dt) << '\n';
}

void write_eigen_csv(const std::string& path, const Field& phi1) {
    if (!phi1.grid) throw std::invalid_argument("write_eigen_csv: missing grid");
    auto out = open_out(path);
    out << "x,phi1\n";
    for (int i = 0; i < phi1.grid->n; ++i)
        out << format_sig(phi1.grid->nodes[i]) << ',' << format_sig(phi1.values[i]) << '\n';
}

TwoPhaseState read_state_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    TwoPhaseState s{make_field(grid), make_field(grid)};
    std::string line;
    bool header_seen = false;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "x,u,v") throw std::runtime_error(path + ": expected header x,u,v");
            header_seen = true;
            continue;
        }
        if (row >= grid.n) throw std::runtime_error(path + ": more rows than grid nodes");
        std::istringstream ss(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(path + ": malformed row '" + line + "'");
            size_t used = 0;
            try {
                vals[c] = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": bad number '" + cell + "'");
            }
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                ++used;
            if (used != cell.size())
                throw std::runtime_error(path + ": bad number '" + cell + "'");
        }
        if (std::getline(ss, cell, ','))
            throw std::runtime_error(path + ": too many columns in '" + line + "'");
        if (std::abs(vals[0] - grid.nodes[row]) > 1e-9)
            throw std::runtime_error(path + ": node mismatch at row " + std::to_string(row));
        s.u.values[row] = vals[1];
        s.v.values[row] = vals[2];
        ++row;
    }
    if (!header_seen) throw std::runtime_error(path + ": missing header");
    if (row != grid.n)
        throw std::runtime_error(path + ": expected " + std::to_string(grid.n) + " rows, got " +
                                 std::to_string(row));
    return s;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotSpec& spec) {
    const double width = 720, height = 480;
    const double ml = 72, mr = 24, mt = 40, mb = 56;  // margins
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            double xv = s.x[i];
            if (spec.log_x) {
                if (!(xv > 0.0)) throw std::invalid_argument("write_svg_plot: log axis needs x > 0");
                xv = std::log10(xv);
            }
            const double yv = s.y[i];
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            if (first) {
                x_min = x_max = xv;
                y_min = y_max = yv;
                first = false;
            } else {
                x_min = std::min(x_min, xv);
                x_max = std::max(x_max, xv);
                y_min = std::min(y_min, yv);
                y_max = std::max(y_max, yv);
            }
        }
    }
    if (x_max - x_min < 1e-300) x_max = x_min + 1.0;
    if (y_max - y_min < 1e-300) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto px = [&](double xv) {
        if (spec.log_x) xv = std::log10(xv);
        return ml + (xv - x_min) / (x_max - x_min) * pw;
    };
    auto py = [&](double yv) { return mt + (y_max - yv) / (y_max - y_min) * ph; };

    auto out = open_out(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes box and ticks.
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    const int ticks = 5;
    for (int k = 0; k <= ticks; ++k) {
        const double fx = x_min + (x_max - x_min) * k / ticks;
        const double tx = ml + pw * k / ticks;
        const double label = spec.log_x ? std::pow(10.0, fx) : fx;
        out << "<line x1=\"" << tx << "\" y1=\"" << mt + ph << "\" x2=\"" << tx << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << tx << "\" y=\"" << mt + ph + 20
            << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << xml_escape(format_sig(label)) << "</text>\n";
        const double fy = y_min + (y_max - y_min) * k / ticks;
        const double ty = mt + ph - ph * k / ticks;
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << ty << "\" x2=\"" << ml << "\" y2=\"" << ty
            << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << ty + 4
            << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << xml_escape(format_sig(fy)) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt - 16
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << xml_escape(spec.title) << "</text>\n"
        << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << xml_escape(spec.x_label) << "</text>\n"
        << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";

    // Data polylines and legend.
    double legend_y = mt + 14;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << xml_escape(s.color)
            << "\" stroke-width=\"1.5\"";
        if (s.dashed) out << " stroke-dasharray=\"6 4\"";
        out << " points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            out << buf;
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<line x1=\"" << ml + pw - 130 << "\" y1=\"" << legend_y << "\" x2=\""
                << ml + pw - 104 << "\" y2=\"" << legend_y << "\" stroke=\"" << xml_escape(s.color)
                << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
                << "/>\n"
                << "<text x=\"" << ml + pw - 98 << "\" y=\"" << legend_y + 4
                << "\" font-size=\"11\" font-family=\"sans-serif\">" << xml_escape(s.label)
                << "</text>\n";
            legend_y += 16;
        }
    }
    out << "</svg>\n";
}

}  // namespace gelfand
