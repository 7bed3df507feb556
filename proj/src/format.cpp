#include "cardinal/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cardinal {

OutputFormat parse_output_format(std::string_view name) {
  if (name == "text") return OutputFormat::text;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected text, csv or json)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::text: return "text";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "text";
}

std::string format_scalar(const BigInt& x) { return x.str(); }

std::string format_scalar(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("failed to format a double");
  return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  fields.push_back(std::move(current));
  return fields;
}

nlohmann::json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

nlohmann::json to_json(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) return to_json(BigInt(boost::multiprecision::numerator(x)));
  return format_scalar(x);
}

template <typename Scalar>
void write_matrix(std::ostream& out, const Dense<Scalar>& a, OutputFormat format,
                  const MatrixLabels& labels) {
  switch (format) {
    case OutputFormat::csv:
      for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
          if (j > 0) out << ',';
          out << csv_escape(format_scalar(a(i, j)));
        }
        out << '\n';
      }
      return;
    case OutputFormat::json: {
      nlohmann::json doc;
      doc["name"] = labels.name;
      doc["size"] = a.rows();
      doc["divisors"] = labels.divisors;
      nlohmann::json rows = nlohmann::json::array();
      for (Index i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
        rows.push_back(std::move(row));
      }
      doc["entries"] = std::move(rows);
      out << doc.dump() << '\n';
      return;
    }
    case OutputFormat::text: {
      // Right-aligned table bordered by the divisor labels.
      const bool bordered = static_cast<Index>(labels.divisors.size()) == a.rows() &&
                            a.rows() == a.cols();
      std::vector<std::vector<std::string>> cells;
      if (bordered) {
        std::vector<std::string> header{labels.name};
        for (auto k : labels.divisors) header.push_back(std::to_string(k));
        cells.push_back(std::move(header));
      }
      for (Index i = 0; i < a.rows(); ++i) {
        std::vector<std::string> row;
        if (bordered) row.push_back(std::to_string(labels.divisors[static_cast<std::size_t>(i)]));
        for (Index j = 0; j < a.cols(); ++j) row.push_back(format_scalar(a(i, j)));
        cells.push_back(std::move(row));
      }
      std::size_t columns = 0;
      for (const auto& row : cells) columns = std::max(columns, row.size());
      std::vector<std::size_t> width(columns, 0);
      for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
      for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c > 0) out << "  ";
          out << std::string(width[c] - row[c].size(), ' ') << row[c];
        }
        out << '\n';
      }
      return;
    }
  }
}

template void write_matrix<BigInt>(std::ostream&, const IntMatrix&, OutputFormat, const MatrixLabels&);
template void write_matrix<Rational>(std::ostream&, const RatMatrix&, OutputFormat, const MatrixLabels&);

}  // namespace cardinal
