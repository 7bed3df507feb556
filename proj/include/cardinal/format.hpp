#pragma once

// Text, CSV and JSON rendering of matrices and scalars.
//
// Integers print in decimal, rationals as "p/q" (integral rationals as "p"),
// doubles as the shortest decimal that round-trips. CSV fields are quoted per
// RFC 4180 when they contain a comma, quote or line break.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cardinal/divisors.hpp"
#include "cardinal/types.hpp"

namespace cardinal {

enum class OutputFormat { text, csv, json };

OutputFormat parse_output_format(std::string_view name);
std::string_view to_string(OutputFormat format);

std::string format_scalar(const BigInt& x);
std::string format_scalar(const Rational& x);
std::string format_double(double x);
std::optional<double> parse_double(std::string_view text);

std::string csv_escape(std::string_view field);
/// Splits one CSV record; handles quoted fields with embedded commas and "".
std::vector<std::string> csv_split(std::string_view line);

/// Labels rows and columns with the approximate divisors in text output.
struct MatrixLabels {
  std::string name;
  std::vector<std::int64_t> divisors;
};

template <typename Scalar>
void write_matrix(std::ostream& out, const Dense<Scalar>& a, OutputFormat format,
                  const MatrixLabels& labels);

extern template void write_matrix<BigInt>(std::ostream&, const IntMatrix&, OutputFormat,
                                          const MatrixLabels&);
extern template void write_matrix<Rational>(std::ostream&, const RatMatrix&, OutputFormat,
                                            const MatrixLabels&);

/// Integers that fit in 64 bits become JSON numbers; everything else a string.
nlohmann::json to_json(const BigInt& x);
nlohmann::json to_json(const Rational& x);

}  // namespace cardinal
