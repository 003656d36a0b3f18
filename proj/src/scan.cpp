#include "stueckelberg/scan.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stueckelberg {

void ScanResult::validate() const {
  const std::size_t expect = n1() * n2();
  if (values.size() != expect)
    throw std::invalid_argument("ScanResult: value count does not match axes");
  if (axis2 && axis2->grid.empty()) throw std::invalid_argument("ScanResult: empty second axis");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string column_label(const ScanAxis& a) {
  return a.unit.empty() ? a.name : a.name + " [" + a.unit + "]";
}

nlohmann::json axis_to_json(const ScanAxis& a) {
  return nlohmann::json{{"name", a.name}, {"unit", a.unit}, {"grid", a.grid}};
}

ScanAxis axis_from_json(const nlohmann::json& j) {
  ScanAxis a;
  a.name = j.at("name").get<std::string>();
  a.unit = j.at("unit").get<std::string>();
  a.grid = j.at("grid").get<std::vector<double>>();
  return a;
}

}  // namespace

std::string to_csv(const ScanResult& r) {
  r.validate();
  std::string out = column_label(r.axis1);
  if (r.axis2) out += "," + column_label(*r.axis2);
  out += ",value\n";
  for (std::size_t i = 0; i < r.n1(); ++i) {
    for (std::size_t j = 0; j < r.n2(); ++j) {
      out += format_double(r.axis1.grid[i]);
      if (r.axis2) out += "," + format_double(r.axis2->grid[j]);
      out += "," + format_double(r.at(i, j)) + "\n";
    }
  }
  return out;
}

std::string to_json(const ScanResult& r) {
  r.validate();
  nlohmann::json j;
  j["axis1"] = axis_to_json(r.axis1);
  if (r.axis2) j["axis2"] = axis_to_json(*r.axis2);
  j["values"] = r.values;
  j["metadata"] = r.metadata;
  return j.dump(2) + "\n";
}

ScanResult scan_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ScanResult r;
  r.axis1 = axis_from_json(j.at("axis1"));
  if (j.contains("axis2")) r.axis2 = axis_from_json(j.at("axis2"));
  r.values = j.at("values").get<std::vector<double>>();
  if (j.contains("metadata"))
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  r.validate();
  return r;
}

ScanResult scan_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  auto parse_label = [](const std::string& s, ScanAxis& a) {
    const auto lb = s.find(" [");
    if (lb == std::string::npos) {
      a.name = s;
    } else {
      a.name = s.substr(0, lb);
      const auto rb = s.rfind(']');
      a.unit = s.substr(lb + 2, rb - lb - 2);
    }
  };

  const std::vector<std::string> header = split(line);
  if (header.size() < 2 || header.back() != "value")
    throw std::invalid_argument("CSV header must end in a value column");
  const bool two_axes = header.size() == 3;

  ScanResult r;
  parse_label(header[0], r.axis1);
  if (two_axes) {
    r.axis2.emplace();
    parse_label(header[1], *r.axis2);
  }

  std::vector<double> a1, a2;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split(line);
    if (parts.size() != header.size()) throw std::invalid_argument("ragged CSV row");
    a1.push_back(std::stod(parts[0]));
    if (two_axes) a2.push_back(std::stod(parts[1]));
    r.values.push_back(std::stod(parts.back()));
  }

  // Rebuild the axes from the long-form columns (axis1 slow, axis2 fast).
  if (!two_axes) {
    r.axis1.grid = a1;
  } else {
    std::size_t n2 = 1;
    while (n2 < a1.size() && a1[n2] == a1[0]) ++n2;
    if (a1.size() % n2 != 0) throw std::invalid_argument("CSV rows do not form a full grid");
    for (std::size_t i = 0; i < a1.size(); i += n2) r.axis1.grid.push_back(a1[i]);
    r.axis2->grid.assign(a2.begin(), a2.begin() + static_cast<std::ptrdiff_t>(n2));
  }
  r.validate();
  return r;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

void write_scan(const ScanResult& r, const std::string& path, const std::string& format) {
  if (format == "json") {
    spill(path, to_json(r));
  } else if (format == "csv") {
    spill(path, to_csv(r));
    if (!r.metadata.empty()) {
      nlohmann::json j;
      j["metadata"] = r.metadata;
      spill(path + ".meta.json", j.dump(2) + "\n");
    }
  } else {
    throw std::invalid_argument("unknown format '" + format + "' (expected csv or json)");
  }
}

ScanResult read_scan(const std::string& path) {
  const std::string text = slurp(path);
  if (!text.empty() && text[0] == '{') return scan_from_json(text);
  ScanResult r = scan_from_csv(text);
  std::ifstream probe(path + ".meta.json");
  if (probe) {
    std::ostringstream ss;
    ss << probe.rdbuf();
    const nlohmann::json j = nlohmann::json::parse(ss.str());
    if (j.contains("metadata"))
      r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  }
  return r;
}

}  // namespace stueckelberg
