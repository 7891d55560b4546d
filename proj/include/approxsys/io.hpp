#ifndef APPROXSYS_IO_HPP
#define APPROXSYS_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "approxsys/analysis.hpp"
#include "approxsys/numeric.hpp"

namespace approxsys {

enum class OutputFormat { json, csv };

/// Throws ErrorKind::format for anything but "json" or "csv".
OutputFormat parse_format(std::string_view text);

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_float(double value);

/// Finite values as numbers, the others as their format_float strings.
nlohmann::json float_json(double value);

/// Coefficients as exact strings, lowest degree first.
nlohmann::json poly_to_json(const ExactPoly& p);
ExactPoly poly_from_json(const nlohmann::json& j);

nlohmann::json complex_json(Complex z);

nlohmann::json to_json(const SupNormEstimate& s);
nlohmann::json to_json(const ErrorBoundReport& r);
nlohmann::json to_json(const PositivityResult& r);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

/// Rows of k, Re gamma, Im gamma, Re g, Im g for row 0 of the table.
std::string numeric_csv(const PathPartition& path, const NumericTable& table);

/// "re", "re+imi", "imi" or an exact form such as "1/2-3/4i".
Complex parse_complex(std::string_view text);
std::vector<Complex> parse_complex_list(std::string_view text);

}  // namespace approxsys

#endif  // APPROXSYS_IO_HPP
