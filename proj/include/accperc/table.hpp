#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace accperc {

/// One output value. Integers that may exceed 64 bits are kept as decimal
/// digits and written as strings in JSON.
class Cell {
public:
  enum class Kind { Integer, Decimal, Real, Text };

  static Cell integer(std::int64_t v);
  static Cell integer(std::uint64_t v);
  static Cell integer(int v) { return integer(static_cast<std::int64_t>(v)); }
  static Cell decimal(const mpz_class& v);
  static Cell rational(const mpq_class& v);  // "num/den", or the integer
  static Cell real(double v);
  static Cell text(std::string v);

  Kind kind() const { return kind_; }
  double real_value() const { return real_; }
  /// Exactly what the CSV writer prints (17 significant digits for reals).
  std::string to_string() const;

private:
  Kind kind_ = Kind::Text;
  std::string text_;
  double real_ = 0.0;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

/// Header line, then one line per row. Cells with commas or quotes are quoted.
void write_csv(std::ostream& out, const ResultTable& table);
/// Array of objects keyed by column name. Non-finite reals become the
/// strings "inf", "-inf" and "nan".
void write_json(std::ostream& out, const ResultTable& table);
void write_table(std::ostream& out, const ResultTable& table, OutputFormat format);

}  // namespace accperc
