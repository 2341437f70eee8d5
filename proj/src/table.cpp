#include "accperc/table.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "accperc/count_table.hpp"

namespace accperc {

Cell Cell::integer(std::int64_t v) {
  Cell c;
  c.kind_ = Kind::Integer;
  c.text_ = std::to_string(v);
  return c;
}

Cell Cell::integer(std::uint64_t v) {
  Cell c;
  c.kind_ = Kind::Integer;
  c.text_ = std::to_string(v);
  return c;
}

Cell Cell::decimal(const mpz_class& v) {
  Cell c;
  c.kind_ = Kind::Decimal;
  c.text_ = accperc::decimal(v);
  return c;
}

Cell Cell::rational(const mpq_class& v) {
  Cell c;
  c.kind_ = Kind::Decimal;
  c.text_ = accperc::decimal(v);
  return c;
}

Cell Cell::real(double v) {
  Cell c;
  c.kind_ = Kind::Real;
  c.real_ = v;
  return c;
}

Cell Cell::text(std::string v) {
  Cell c;
  c.kind_ = Kind::Text;
  c.text_ = std::move(v);
  return c;
}

std::string Cell::to_string() const {
  if (kind_ != Kind::Real) return text_;
  if (std::isnan(real_)) return "nan";
  if (std::isinf(real_)) return real_ > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", real_);
  return buf;
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json json_value(const Cell& c) {
  switch (c.kind()) {
    case Cell::Kind::Integer: {
      const std::string s = c.to_string();
      if (s.front() == '-') return std::stoll(s);
      return std::stoull(s);
    }
    case Cell::Kind::Real:
      if (!std::isfinite(c.real_value())) return c.to_string();
      return c.real_value();
    case Cell::Kind::Decimal:
    case Cell::Kind::Text: return c.to_string();
  }
  return nullptr;
}

}  // namespace

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i].to_string());
    out << '\n';
  }
}

void write_json(std::ostream& out, const ResultTable& table) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_value(row[i]);
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const ResultTable& table, OutputFormat format) {
  if (format == OutputFormat::Csv) write_csv(out, table);
  else write_json(out, table);
}

}  // namespace accperc
