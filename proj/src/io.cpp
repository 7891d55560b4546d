#include "approxsys/io.hpp"

#include <cmath>
#include <cstdio>

#include "approxsys/error.hpp"

namespace approxsys {

OutputFormat parse_format(std::string_view text)
{
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw Error(ErrorKind::format, "unsupported format '" + std::string(text) + "' (expected json or csv)");
}

std::string format_float(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

nlohmann::json float_json(double value)
{
    if (std::isfinite(value)) {
        return value;
    }
    return format_float(value);
}

nlohmann::json poly_to_json(const ExactPoly& p)
{
    auto out = nlohmann::json::array();
    for (const auto& c : p.coeffs()) {
        out.push_back(c.to_string());
    }
    if (out.empty()) {
        out.push_back("0");
    }
    return out;
}

ExactPoly poly_from_json(const nlohmann::json& j)
{
    if (!j.is_array()) {
        throw Error(ErrorKind::parse, "polynomial must be an array of coefficient strings");
    }
    std::vector<GaussianRational> coeffs;
    for (const auto& c : j) {
        if (!c.is_string()) {
            throw Error(ErrorKind::parse, "coefficient must be a string");
        }
        coeffs.push_back(GaussianRational::parse(c.get<std::string>()));
    }
    return ExactPoly(std::move(coeffs));
}

nlohmann::json complex_json(Complex z)
{
    return {{"re", float_json(z.real())}, {"im", float_json(z.imag())}};
}

nlohmann::json to_json(const SupNormEstimate& s)
{
    return {{"value", float_json(s.value)}, {"method", std::string(to_string(s.method))}, {"rigorous", s.rigorous}};
}

nlohmann::json to_json(const ErrorBoundReport& r)
{
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : r.factors) {
        auto entry = to_json(f.estimate);
        entry["label"] = f.label;
        factors.push_back(std::move(entry));
    }
    nlohmann::json out{
        {"n", r.n},
        {"formula", r.formula},
        {"coefficient", float_json(r.coefficient)},
        {"exponent", r.exponent},
        {"radius", float_json(r.radius)},
        {"value", float_json(r.value())},
        {"infinite", r.infinite},
        {"rigorous", r.rigorous},
        {"factors", std::move(factors)},
    };
    const auto optional_field = [&out](const char* key, const std::optional<double>& v) {
        if (v) {
            out[key] = float_json(*v);
        }
    };
    optional_field("bound_a", r.bound_a);
    optional_field("bound_b", r.bound_b);
    optional_field("per_index", r.per_index);
    optional_field("closed_form", r.closed_form);
    return out;
}

nlohmann::json to_json(const PositivityResult& r)
{
    nlohmann::json out{{"positive", r.positive}, {"up_to_truncation", r.up_to_truncation}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        out["counterexample"] = {{"index", c.index},
                                 {"on_coefficient", c.on_coefficient},
                                 {"k", c.k},
                                 {"l", c.l},
                                 {"value", c.value.to_string()}};
    }
    return out;
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string numeric_csv(const PathPartition& path, const NumericTable& table)
{
    std::string out = "k,re_x,im_x,re_g,im_g\n";
    for (Eigen::Index k = 0; k < table.values.cols(); ++k) {
        const Complex x = path.points[static_cast<std::size_t>(k)];
        const Complex g = table.values(0, k);
        out += std::to_string(k) + ',' + format_float(x.real()) + ',' + format_float(x.imag()) + ',' +
               format_float(g.real()) + ',' + format_float(g.imag()) + '\n';
    }
    return out;
}

Complex parse_complex(std::string_view text)
{
    return GaussianRational::parse(text).to_complex();
}

std::vector<Complex> parse_complex_list(std::string_view text)
{
    std::vector<Complex> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace approxsys
