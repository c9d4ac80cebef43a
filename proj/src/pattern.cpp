#include "twinterf/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace twinterf {

PatternSeries::PatternSeries(std::string sweep_name, std::vector<double> sweep_values)
    : sweep_name_(std::move(sweep_name)), sweep_values_(std::move(sweep_values)) {}

void PatternSeries::add_column(std::string name, std::vector<double> values) {
  if (values.size() != sweep_values_.size()) {
    throw std::invalid_argument("column '" + name + "' does not match the sweep length");
  }
  if (has_column(name) || name == sweep_name_) throw std::invalid_argument("duplicate column '" + name + "'");
  columns_.emplace_back(std::move(name), std::move(values));
}

bool PatternSeries::has_column(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
}

const std::vector<double>& PatternSeries::column(const std::string& name) const {
  for (const auto& c : columns_) {
    if (c.first == name) return c.second;
  }
  throw std::out_of_range("no column '" + name + "'");
}

void PatternSeries::rename_column(const std::string& from, const std::string& to) {
  for (auto& c : columns_) {
    if (c.first == from) {
      c.first = to;
      return;
    }
  }
  throw std::out_of_range("no column '" + from + "'");
}

void PatternSeries::swap_columns(const std::string& a, const std::string& b) {
  auto find = [&](const std::string& name) {
    auto it = std::find_if(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
    if (it == columns_.end()) throw std::out_of_range("no column '" + name + "'");
    return it;
  };
  std::swap(find(a)->second, find(b)->second);
}

void PatternSeries::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const PatternSeries& series) {
  for (const auto& [key, value] : series.metadata()) out << "# " << key << " = " << value << '\n';
  out << series.sweep_name();
  for (const auto& c : series.columns()) out << ',' << c.first;
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_number(series.sweep_values()[i]);
    for (const auto& c : series.columns()) out << ',' << format_number(c.second[i]);
    out << '\n';
  }
}

std::vector<double> make_sweep(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("sweep step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("sweep end lies before its start");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9)) + 1;
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = lo + static_cast<double>(i) * step;
  return v;
}

}  // namespace twinterf
