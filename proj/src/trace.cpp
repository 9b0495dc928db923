#include "wsnet/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wsnet {

namespace {

void append_double(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  std::string out = "iteration,actor,action,utility,system_metric,potential\n";
  for (const TraceRow& row : rows) {
    out += std::to_string(row.iteration);
    out += ',';
    out += std::to_string(row.actor);
    out += ',';
    out += std::to_string(row.action);
    out += ',';
    append_double(out, row.utility);
    out += ',';
    append_double(out, row.system_metric);
    out += ',';
    append_double(out, row.potential);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRow>& rows) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open trace file for writing: " + path);
  file << trace_to_csv(rows);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace wsnet
