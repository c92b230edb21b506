#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tbechart/chart.hpp"
#include "tbechart/simulation.hpp"

namespace tbechart {

/// Column label for a percentile level: 0.05 -> "p05", 0.5 -> "p50",
/// 0.025 -> "p02.5".
std::string percentile_label(double level);

/// Study table as CSV. Header:
///   eta0,beta0,m,acarl,sdcarl,epc,p05,p10,p25,p50,p75,p90,p95
/// (percentile columns follow the study's levels, in order).
std::string study_to_csv(const std::vector<StudyRow>& rows,
                         const std::vector<double>& levels);

/// Study table as a JSON document that also echoes the study inputs.
std::string study_to_json(const StudyConfig& cfg, const std::vector<StudyRow>& rows);

/// StudyConfig from its JSON form; missing keys keep their defaults.
StudyConfig study_config_from_json(const std::string& text);
std::string study_config_to_json(const StudyConfig& cfg);

/// Chart design serialization. Reading back reproduces every stored field
/// bit for bit.
std::string design_to_json(const ChartDesign& d);
ChartDesign design_from_json(const std::string& text);

/// Reads a time-between-events series: one positive value per line,
/// blank lines and lines whose first non-space character is '#' ignored.
/// Malformed or non-positive entries raise DataFormatError with the
/// 1-based line number.
std::vector<double> read_tbe_series(std::istream& in);
std::vector<double> read_tbe_file(const std::string& path);

}  // namespace tbechart
