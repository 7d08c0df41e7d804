#include "pswitch/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace pswitch {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kValueHeader = "x,v1,v2,G1,G2,in_S1,in_S2";

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double num_at(const std::vector<std::string>& f, std::size_t i, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(f[i].c_str(), &end);
  if (end == f[i].c_str() || *end != '\0')
    throw std::runtime_error("csv: bad number '" + f[i] + "' on line " +
                             std::to_string(line));
  return v;
}

}  // namespace

std::string to_csv(const ValueTable& t) {
  const std::size_t n = t.rows();
  if (t.v1.size() != n || t.v2.size() != n || t.g1.size() != n ||
      t.g2.size() != n || t.in_s1.size() != n || t.in_s2.size() != n)
    throw std::invalid_argument("to_csv: ragged value table");
  std::ostringstream o;
  o << kValueHeader << "\n";
  for (std::size_t k = 0; k < n; ++k) {
    o << csv_num(t.x[k]) << ',' << csv_num(t.v1[k]) << ',' << csv_num(t.v2[k])
      << ',' << csv_num(t.g1[k]) << ',' << csv_num(t.g2[k]) << ','
      << int(t.in_s1[k]) << ',' << int(t.in_s2[k]) << "\n";
  }
  return o.str();
}

ValueTable value_table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kValueHeader)
    throw std::runtime_error("csv: missing value-table header");
  ValueTable t;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 7)
      throw std::runtime_error("csv: expected 7 fields on line " +
                               std::to_string(lineno));
    t.x.push_back(num_at(f, 0, lineno));
    t.v1.push_back(num_at(f, 1, lineno));
    t.v2.push_back(num_at(f, 2, lineno));
    t.g1.push_back(num_at(f, 3, lineno));
    t.g2.push_back(num_at(f, 4, lineno));
    t.in_s1.push_back(num_at(f, 5, lineno) != 0.0 ? 1 : 0);
    t.in_s2.push_back(num_at(f, 6, lineno) != 0.0 ? 1 : 0);
  }
  return t;
}

std::string to_csv(const CellTable& t) {
  const auto check = [](const std::string& cell) {
    for (const char c : cell)
      if (c == ',' || c == '"' || c == '\n' || c == '\r')
        throw std::invalid_argument("to_csv: cell needs quoting, which this "
                                    "format deliberately avoids: " + cell);
  };
  std::ostringstream o;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    check(t.header[i]);
    o << t.header[i] << (i + 1 < t.header.size() ? "," : "");
  }
  o << "\n";
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size())
      throw std::invalid_argument("to_csv: ragged row");
    for (std::size_t i = 0; i < row.size(); ++i) {
      check(row[i]);
      o << row[i] << (i + 1 < row.size() ? "," : "");
    }
    o << "\n";
  }
  return o.str();
}

CellTable cells_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CellTable t;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty document");
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_line(line);
    if (f.size() != t.header.size())
      throw std::runtime_error("csv: ragged row: " + line);
    t.rows.push_back(std::move(f));
  }
  return t;
}

}  // namespace pswitch
