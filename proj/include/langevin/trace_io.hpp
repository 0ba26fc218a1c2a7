#pragma once

#include "langevin/samplers.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace langevin {

struct TraceProvenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
};

/// CSV: a `# config_hash=... seed=... replica=...` line, header `step,x0,...,x{d-1}`,
/// values with 17 significant digits, and `# diverged at step N` after a partial trace.
void write_trace_csv(std::ostream& os, const Trace& t, const TraceProvenance& prov);
void write_trace_csv(const std::string& path, const Trace& t, const TraceProvenance& prov);

/// Loads a CSV trace; comment lines are skipped except the divergence marker.
Trace read_trace_csv(std::istream& is);
Trace read_trace_csv(const std::string& path);

}  // namespace langevin
