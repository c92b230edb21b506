#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tbechart/chart.hpp"

namespace tbechart {

enum class PointStatus { in_limits, below_lcl, above_ucl };

struct MonitorRecord {
  std::size_t index;  ///< 1-based position in the series
  double value;
  PointStatus status;
};

struct MonitorReport {
  std::vector<MonitorRecord> records;
  std::optional<std::size_t> first_signal;  ///< index of the first signal, if any
  std::size_t signal_count = 0;
};

/// Classifies each observation against the design limits. A point must
/// fall strictly beyond a limit to signal; equality with a limit counts
/// as in control.
MonitorReport monitor_series(const ChartDesign& d, std::span<const double> series);

}  // namespace tbechart
