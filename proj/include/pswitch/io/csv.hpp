#pragma once
// CSV emission and parsing. Emitted text is round-trip stable: parsing an
// emitted document and emitting it again reproduces the bytes.

#include <cstdint>
#include <string>
#include <vector>

namespace pswitch {

// Nodewise solver output: x, v1, v2, G1, G2, in_S1, in_S2.
struct ValueTable {
  std::vector<double> x, v1, v2, g1, g2;
  std::vector<std::uint8_t> in_s1, in_s2;
  std::size_t rows() const { return x.size(); }
};

std::string to_csv(const ValueTable& t);
ValueTable value_table_from_csv(const std::string& text);

// Generic cell table for sweep and tournament outputs. No cell may contain
// a comma, quote, or newline; emission enforces this.
struct CellTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CellTable& t);
CellTable cells_from_csv(const std::string& text);

// %.17g, the shortest fixed format that survives a parse/emit cycle.
std::string csv_num(double v);

}  // namespace pswitch
