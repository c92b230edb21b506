#include "tbechart/monitor.hpp"

#include <stdexcept>

namespace tbechart {

MonitorReport monitor_series(const ChartDesign& d, std::span<const double> series) {
  MonitorReport report;
  report.records.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = series[i];
    if (!(x > 0.0))
      throw std::invalid_argument("monitor_series: observations must be positive");
    PointStatus status = PointStatus::in_limits;
    if (x < d.lcl)
      status = PointStatus::below_lcl;
    else if (x > d.ucl)
      status = PointStatus::above_ucl;
    if (status != PointStatus::in_limits) {
      ++report.signal_count;
      if (!report.first_signal) report.first_signal = i + 1;
    }
    report.records.push_back({i + 1, x, status});
  }
  return report;
}

}  // namespace tbechart
