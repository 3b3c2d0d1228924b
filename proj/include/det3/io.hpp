#ifndef DET3_IO_HPP
#define DET3_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "det3/coefficients.hpp"

namespace det3 {

// Minimal INI-style config: [section] headers, key = value lines, '#' or ';'
// comments. Values keep their raw text; typed accessors parse on demand.
// Section/key order is preserved for the reproducibility echo.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;

  void set(const std::string& section, const std::string& key,
           const std::string& value);
  // Deterministic one-line-per-key echo in original order, for '#' headers.
  std::vector<std::string> echo_lines() const;

 private:
  struct Entry {
    std::string section, key, value;
  };
  std::vector<Entry> entries_;
  const Entry* find(const std::string& section, const std::string& key) const;
};

// Coefficients from the [coefficients] section:
//   gamma = 1.0
//   p_breaks = 0 1          (absent or single piece: breaks default to 0 gamma)
//   p_coeffs_0 = 0 1 -1     (local monomial, piece index suffix)
//   q_breaks / q_coeffs_i   (same layout)
//   preset = box | smooth | zero   (alternative to explicit pieces)
Coefficients coefficients_from_config(const Config& cfg);

// Writers share one table abstraction: named columns, double cells; complex
// quantities are always two adjacent real columns. "csv" emits '#'-prefixed
// echo lines then a header row; "json-like" emits the same data as one
// object per row with the echo under "config".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;  // per-row reason codes, empty = ok
};
void write_table(const std::string& path, const Table& table,
                 const std::vector<std::string>& echo, const std::string& format);
std::string format_table(const Table& table, const std::vector<std::string>& echo,
                         const std::string& format);

}  // namespace det3

#endif
