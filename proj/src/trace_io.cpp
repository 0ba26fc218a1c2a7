#include "langevin/trace_io.hpp"

#include "langevin/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace langevin {

namespace {

void put_double(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& t, const TraceProvenance& prov) {
    os << "# config_hash=" << prov.config_hash << " seed=" << prov.seed << " replica=" << prov.replica
       << '\n';
    os << "step";
    for (int i = 0; i < t.dim; ++i) os << ",x" << i;
    os << '\n';
    std::string line;
    for (std::size_t r = 0; r < t.size(); ++r) {
        line = std::to_string(t.steps[r]);
        for (double v : t.point(r)) {
            line += ',';
            put_double(line, v);
        }
        line += '\n';
        os << line;
    }
    if (t.diverged) os << "# diverged at step " << t.divergence_step << '\n';
}

void write_trace_csv(const std::string& path, const Trace& t, const TraceProvenance& prov) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write trace file: " + path);
    write_trace_csv(os, t, prov);
    if (!os) throw std::runtime_error("failed writing trace file: " + path);
}

Trace read_trace_csv(std::istream& is) {
    Trace t;
    std::string line;
    bool header = false;
    const std::string marker = "# diverged at step ";
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind(marker, 0) == 0) {
                t.diverged = true;
                t.divergence_step = std::stoull(line.substr(marker.size()));
            }
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (!header) {
            int cols = 0;
            while (std::getline(ss, cell, ',')) ++cols;
            if (cols < 2) throw InputError("trace header needs step and at least one coordinate");
            t.dim = cols - 1;
            header = true;
            continue;
        }
        std::getline(ss, cell, ',');
        t.steps.push_back(std::stoull(cell));
        int n = 0;
        while (std::getline(ss, cell, ',')) {
            t.data.push_back(std::strtod(cell.c_str(), nullptr));
            ++n;
        }
        if (n != t.dim) throw InputError("ragged trace row");
    }
    if (!header) throw InputError("trace has no header");
    return t;
}

Trace read_trace_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open trace file: " + path);
    return read_trace_csv(is);
}

}  // namespace langevin
