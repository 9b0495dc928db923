#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsnet {

// One row of a run trace. `action` is a channel id for the AP-tier
// algorithms and a 1-based AP id for the association game; `actor` is a
// 1-based AP or user id. system_metric carries the system throughput (bps)
// or the total user rate (Mbps); potential carries Phi or Psi.
struct TraceRow {
  std::int64_t iteration = 0;
  int actor = 0;
  int action = 0;
  double utility = 0.0;
  double system_metric = 0.0;
  double potential = 0.0;
};

// Serializes rows to CSV with a fixed header. Doubles are printed with 17
// significant digits so identical runs produce byte-identical files.
std::string trace_to_csv(const std::vector<TraceRow>& rows);
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows);

// FNV-1a, used to stamp scenario bytes into run metadata.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace wsnet
