#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "silt/io.hpp"

namespace silt {

namespace {

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::vector<double> split_row(const std::string& line, int expected,
                              std::size_t lineno) {
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        const std::string tok = line.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("snapshot line " +
                                        std::to_string(lineno) +
                                        ": bad number '" + tok + "'");
        }
        pos = comma + 1;
        if (comma == line.size()) break;
    }
    if (static_cast<int>(vals.size()) != expected)
        throw std::invalid_argument(
            "snapshot line " + std::to_string(lineno) + ": expected " +
            std::to_string(expected) + " columns, got " +
            std::to_string(vals.size()));
    return vals;
}

}  // namespace

std::string snapshot_to_string(const Field& f, double time,
                               const Physics& phys) {
    const Grid& g = f.grid;
    std::string out;
    const std::size_t cells = static_cast<std::size_t>(g.nx) * g.ny;
    out.reserve(64 + cells * (g.dim == 1 ? 120 : 160));
    out += (g.dim == 1) ? "x,h,u,zb,eta,time\n" : "x,y,h,u,v,zb,eta,time\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const FlowState& s = f.at(i, j);
            const Primitives p = primitives(s, phys.h_dry);
            append_num(out, g.x_center(i));
            out += ',';
            if (g.dim == 2) {
                append_num(out, g.y_center(j));
                out += ',';
            }
            append_num(out, s.h);
            out += ',';
            append_num(out, p.u);
            out += ',';
            if (g.dim == 2) {
                append_num(out, p.v);
                out += ',';
            }
            append_num(out, s.zb);
            out += ',';
            append_num(out, s.h + s.zb);
            out += ',';
            append_num(out, time);
            out += '\n';
        }
    }
    return out;
}

void write_snapshot(const Field& f, double time, const std::string& path,
                    const Physics& phys) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    const std::string body = snapshot_to_string(f, time, phys);
    os.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");

    std::string header;
    if (!std::getline(is, header))
        throw std::invalid_argument("snapshot '" + path + "' is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    int dim = 0;
    if (header == "x,h,u,zb,eta,time") {
        dim = 1;
    } else if (header == "x,y,h,u,v,zb,eta,time") {
        dim = 2;
    } else {
        throw std::invalid_argument("snapshot '" + path +
                                    "': unrecognised header '" + header + "'");
    }
    const int cols = (dim == 1) ? 6 : 8;

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_row(line, cols, lineno));
    }
    if (rows.empty())
        throw std::invalid_argument("snapshot '" + path + "' has no data rows");

    // Rows are row-major with x varying fastest; recover the grid from the
    // cell-centre coordinates (x_0 = dx/2).
    int nx = static_cast<int>(rows.size());
    int ny = 1;
    if (dim == 2) {
        nx = 0;
        const double y0 = rows[0][1];
        while (nx < static_cast<int>(rows.size()) && rows[nx][1] == y0) ++nx;
        if (nx == 0 || rows.size() % nx != 0)
            throw std::invalid_argument("snapshot '" + path +
                                        "': rows do not form a grid");
        ny = static_cast<int>(rows.size()) / nx;
    }
    const double dx = (nx > 1) ? rows[1][0] - rows[0][0] : 2.0 * rows[0][0];
    Grid grid;
    if (dim == 1) {
        grid = Grid::make_1d(dx * nx, nx);
    } else {
        const double dy =
            (ny > 1) ? rows[static_cast<std::size_t>(nx)][1] - rows[0][1]
                     : 2.0 * rows[0][1];
        grid = Grid::make_2d(dx * nx, dy * ny, nx, ny);
    }

    Snapshot snap;
    snap.field = Field(grid);
    snap.time = rows[0][cols - 1];
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::vector<double>& r =
                rows[static_cast<std::size_t>(j) * nx + i];
            FlowState& s = snap.field.at(i, j);
            if (dim == 1) {
                s.h = r[1];
                s.hu = r[1] * r[2];
                s.zb = r[3];
            } else {
                s.h = r[2];
                s.hu = r[2] * r[3];
                s.hv = r[2] * r[4];
                s.zb = r[5];
            }
        }
    }
    return snap;
}

}  // namespace silt
