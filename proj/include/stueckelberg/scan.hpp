#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stueckelberg {

struct ScanAxis {
  std::string name;
  std::string unit;
  std::vector<double> grid;
  bool operator==(const ScanAxis&) const = default;
};

// Labeled result grid: a spectrum (one axis), a map (two axes, values stored
// with axis1 as the slow index), or a time trace. Metadata carries the full
// parameter echo needed to reproduce the run.
struct ScanResult {
  ScanAxis axis1;
  std::optional<ScanAxis> axis2;
  std::vector<double> values;
  std::map<std::string, std::string> metadata;

  std::size_t n1() const { return axis1.grid.size(); }
  std::size_t n2() const { return axis2 ? axis2->grid.size() : 1; }
  double& at(std::size_t i1, std::size_t i2 = 0) { return values[i1 * n2() + i2]; }
  double at(std::size_t i1, std::size_t i2 = 0) const { return values[i1 * n2() + i2]; }
  void validate() const;  // throws if value count does not match the axes

  bool operator==(const ScanResult&) const = default;
};

// 17-significant-digit formatting used for all numeric file output.
std::string format_double(double v);

// Header row plus one long-form row per grid point, axis1 varying slowest.
std::string to_csv(const ScanResult& r);
// Axes, values, and the complete metadata block; key order is deterministic.
std::string to_json(const ScanResult& r);

ScanResult scan_from_json(const std::string& text);
// Accepts the to_csv layout; metadata is not part of the CSV body.
ScanResult scan_from_csv(const std::string& text);

// Writes CSV or JSON ("csv"/"json"). CSV cannot hold the metadata block
// without breaking its fixed header+rows layout, so a JSON sidecar
// `<path>.meta.json` is written alongside when metadata is present.
void write_scan(const ScanResult& r, const std::string& path, const std::string& format);
// Loads a scan by extension or content; merges a sidecar metadata file if one
// is found next to a CSV.
ScanResult read_scan(const std::string& path);

}  // namespace stueckelberg
