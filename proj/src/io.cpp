#include "det3/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace det3 {

namespace {

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  // Round-trip exact: 17 significant digits reproduce the double bit pattern.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    cfg.entries_.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return cfg;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::out_of_range("missing config key [" + section + "] " + key);
  return e->value;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return std::stod(get(section, key));
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  const Entry* e = find(section, key);
  return e ? std::stod(e->value) : fallback;
}

int Config::get_int_or(const std::string& section, const std::string& key,
                       int fallback) const {
  const Entry* e = find(section, key);
  return e ? std::stoi(e->value) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  std::istringstream in(get(section, key));
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("non-numeric item in [" + section + "] " + key);
  return out;
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  for (Entry& e : entries_)
    if (e.section == section && e.key == key) {
      e.value = value;
      return;
    }
  entries_.push_back({section, key, value});
}

std::vector<std::string> Config::echo_lines() const {
  std::vector<std::string> out;
  for (const Entry& e : entries_)
    out.push_back((e.section.empty() ? e.key : e.section + "." + e.key) + " = " + e.value);
  return out;
}

namespace {

PiecewisePoly poly_from_config(const Config& cfg, const std::string& prefix, double gamma) {
  std::vector<double> breaks;
  if (cfg.has("coefficients", prefix + "_breaks"))
    breaks = cfg.get_doubles("coefficients", prefix + "_breaks");
  else
    breaks = {0.0, gamma};
  if (breaks.size() < 2)
    throw std::invalid_argument(prefix + "_breaks needs at least two entries");
  std::vector<std::vector<double>> coef;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const std::string key = prefix + "_coeffs_" + std::to_string(i);
    if (!cfg.has("coefficients", key)) {
      if (breaks.size() == 2) return PiecewisePoly::zero(gamma);
      throw std::invalid_argument("missing [coefficients] " + key);
    }
    coef.push_back(cfg.get_doubles("coefficients", key));
  }
  return PiecewisePoly(breaks, coef);
}

}  // namespace

Coefficients coefficients_from_config(const Config& cfg) {
  const std::string preset = cfg.get_or("coefficients", "preset", "");
  if (preset == "box") return Coefficients::box();
  if (preset == "smooth") return Coefficients::smooth();
  if (preset == "zero") return Coefficients::zero(cfg.get_double_or("coefficients", "gamma", 1.0));
  if (!preset.empty()) throw std::invalid_argument("unknown preset: " + preset);
  const double gamma = cfg.get_double_or("coefficients", "gamma", 1.0);
  Coefficients c(poly_from_config(cfg, "p", gamma), poly_from_config(cfg, "q", gamma), gamma);
  c.validate();
  return c;
}

std::string format_table(const Table& table, const std::vector<std::string>& echo,
                         const std::string& format) {
  const bool notes = !table.notes.empty();
  if (notes && table.notes.size() != table.rows.size())
    throw std::invalid_argument("table notes must be empty or match the row count");
  if (format == "csv") {
    std::ostringstream out;
    for (const std::string& line : echo) out << "# " << line << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
      out << (i ? "," : "") << table.columns[i];
    out << (notes ? ",note\n" : "\n");
    for (size_t r = 0; r < table.rows.size(); ++r) {
      for (size_t i = 0; i < table.rows[r].size(); ++i)
        out << (i ? "," : "") << fmt(table.rows[r][i]);
      if (notes) out << "," << table.notes[r];
      out << "\n";
    }
    return out.str();
  }
  if (format == "json-like") {
    nlohmann::ordered_json doc;
    doc["config"] = echo;
    doc["rows"] = nlohmann::ordered_json::array();
    for (size_t r = 0; r < table.rows.size(); ++r) {
      nlohmann::ordered_json row;
      for (size_t i = 0; i < table.columns.size(); ++i) row[table.columns[i]] = table.rows[r][i];
      if (notes) row["note"] = table.notes[r];
      doc["rows"].push_back(row);
    }
    return doc.dump(2) + "\n";
  }
  throw std::invalid_argument("unknown output format: " + format);
}

void write_table(const std::string& path, const Table& table,
                 const std::vector<std::string>& echo, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << format_table(table, echo, format);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace det3
