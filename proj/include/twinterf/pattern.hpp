#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twinterf {

/// A sweep with named result columns, ready for CSV output.
class PatternSeries {
 public:
  PatternSeries(std::string sweep_name, std::vector<double> sweep_values);

  const std::string& sweep_name() const { return sweep_name_; }
  const std::vector<double>& sweep_values() const { return sweep_values_; }
  std::size_t size() const { return sweep_values_.size(); }

  /// Appends a column; its length must match the sweep.
  void add_column(std::string name, std::vector<double> values);
  bool has_column(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  const std::vector<std::pair<std::string, std::vector<double>>>& columns() const { return columns_; }
  void rename_column(const std::string& from, const std::string& to);
  void swap_columns(const std::string& a, const std::string& b);

  void add_metadata(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

 private:
  std::string sweep_name_;
  std::vector<double> sweep_values_;
  std::vector<std::pair<std::string, std::vector<double>>> columns_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Formats with 17 significant digits in the C locale.
std::string format_number(double v);

/// '#'-prefixed "key = value" metadata lines, a header row and one row per
/// sweep point, comma separated.
void write_csv(std::ostream& out, const PatternSeries& series);

/// Uniform sweep lo, lo+step, ... up to hi inclusive (within step/1e9).
std::vector<double> make_sweep(double lo, double hi, double step);

}  // namespace twinterf
