#include "approxsys/cli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "CLI11.hpp"

#include "approxsys/catalog.hpp"
#include "approxsys/error.hpp"
#include "approxsys/io.hpp"
#include "approxsys/numeric.hpp"
#include "approxsys/verify.hpp"

namespace approxsys {

namespace {

using nlohmann::json;

struct Options {
    std::string entry;
    std::string scope = "all";
    unsigned p = 2;
    std::optional<double> radius;
    std::optional<std::string> alpha;
    std::size_t n = 2;
    std::optional<std::string> segment;
    std::optional<std::string> polyline;
    std::optional<std::string> circle;
    std::size_t points = 101;
    std::size_t segments = 1000;
    std::string variant = "B";
    std::optional<std::string> format;
    bool all_rows = false;
};

CatalogEntry load_entry(const Options& o)
{
    CatalogParams params;
    params.p = o.p;
    params.radius = o.radius;
    if (o.alpha) {
        params.alpha = GaussianRational::parse(*o.alpha);
    }
    return catalog_get(o.entry, params);
}

json params_json(const CatalogEntry& e)
{
    return {{"p", e.params.p}, {"R", float_json(e.radius)}, {"alpha", e.params.alpha.to_string()}};
}

OutputFormat format_of(const Options& o, OutputFormat fallback)
{
    return o.format ? parse_format(*o.format) : fallback;
}

void emit(std::ostream& out, const json& doc)
{
    out << doc.dump(2) << '\n';
}

/// Default path: the segment from x0 to x0 + R.
std::vector<Complex> path_vertices(const Options& o, const CatalogEntry& e)
{
    if (o.segment && o.polyline) {
        throw Error(ErrorKind::usage, "--segment and --polyline are exclusive");
    }
    if (o.segment || o.polyline) {
        auto v = parse_complex_list(o.segment ? *o.segment : *o.polyline);
        if (o.segment && v.size() != 2) {
            throw Error(ErrorKind::grid, "--segment takes exactly two points a,b");
        }
        return v;
    }
    if (!std::isfinite(e.radius)) {
        throw Error(ErrorKind::usage, "entry has an unbounded domain; give --segment or --polyline");
    }
    const Complex x0 = e.system.x0().to_complex();
    return {x0, x0 + e.radius};
}

int cmd_list(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::json);
    if (fmt == OutputFormat::csv) {
        out << "name,parameters,notes\n";
        for (const auto& info : catalog_list()) {
            out << csv_field(info.name) << ',' << csv_field(info.parameters) << ',' << csv_field(info.notes) << '\n';
        }
        return 0;
    }
    json entries = json::array();
    for (const auto& info : catalog_list()) {
        entries.push_back({{"name", info.name}, {"parameters", info.parameters}, {"notes", info.notes}});
    }
    emit(out, {{"entries", std::move(entries)}});
    return 0;
}

int cmd_approximate(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::json);
    const auto e = load_entry(o);
    const auto table = build_approximants(e.system, o.n);
    const std::size_t rows = o.all_rows ? table.rows.size() : 1;
    if (fmt == OutputFormat::csv) {
        out << "row,degree,coefficient\n";
        for (std::size_t i = 0; i < rows; ++i) {
            const auto c = poly_to_json(table.row(i));
            for (std::size_t k = 0; k < c.size(); ++k) {
                out << i << ',' << k << ',' << csv_field(c[k].get<std::string>()) << '\n';
            }
        }
        return 0;
    }
    json doc{{"entry", e.name},
             {"params", params_json(e)},
             {"n", o.n},
             {"x0", e.system.x0().to_string()},
             {"coefficients", poly_to_json(table.top())}};
    if (table.truncation) {
        doc["truncation"] = *table.truncation;
    }
    if (o.all_rows) {
        json all = json::array();
        for (const auto& row : table.rows) {
            all.push_back(poly_to_json(row));
        }
        doc["rows"] = std::move(all);
    }
    emit(out, doc);
    return 0;
}

int cmd_eval(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::csv);
    const auto e = load_entry(o);
    if (o.points == 0) {
        throw Error(ErrorKind::grid, "--points must be at least 1");
    }
    std::vector<Complex> grid;
    if (o.circle) {
        if (o.segment || o.polyline) {
            throw Error(ErrorKind::usage, "--circle excludes --segment and --polyline");
        }
        const auto c = parse_complex_list(*o.circle);
        if (c.size() != 2 || c[1].imag() != 0.0 || c[1].real() < 0.0) {
            throw Error(ErrorKind::grid, "--circle takes center,radius with a real radius >= 0");
        }
        for (std::size_t k = 0; k < o.points; ++k) {
            const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(o.points);
            grid.push_back(c[0] + c[1].real() * Complex(std::cos(t), std::sin(t)));
        }
    } else {
        if (o.polyline) {
            throw Error(ErrorKind::grid, "eval grids are a --segment or a --circle");
        }
        const auto v = path_vertices(o, e);
        for (std::size_t k = 0; k < o.points; ++k) {
            const double t = o.points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(o.points - 1);
            grid.push_back(k + 1 == o.points && o.points > 1 ? v[1] : v[0] + (v[1] - v[0]) * t);
        }
    }

    const auto g = convert<Complex>(build_approximants(e.system, o.n).top());
    double worst = 0.0;
    json rows = json::array();
    std::string csv = "re_x,im_x,re_g,im_g,re_ref,im_ref,abs_error\n";
    for (const Complex x : grid) {
        const Complex approx = g(x);
        const Complex ref = e.reference(x);
        const double error = std::abs(ref - approx);
        worst = std::max(worst, error);
        if (fmt == OutputFormat::csv) {
            csv += format_float(x.real()) + ',' + format_float(x.imag()) + ',' + format_float(approx.real()) + ',' +
                   format_float(approx.imag()) + ',' + format_float(ref.real()) + ',' + format_float(ref.imag()) +
                   ',' + format_float(error) + '\n';
        } else {
            rows.push_back({{"x", complex_json(x)},
                            {"approximant", complex_json(approx)},
                            {"reference", complex_json(ref)},
                            {"error", float_json(error)}});
        }
    }
    if (fmt == OutputFormat::csv) {
        out << csv;
    } else {
        emit(out, {{"entry", e.name}, {"params", params_json(e)}, {"n", o.n}, {"max_error", float_json(worst)},
                   {"points", std::move(rows)}});
    }
    return 0;
}

ErrorBoundReport uniform_variant(const CatalogEntry& e, std::size_t n)
{
    const auto& sys = e.system;
    const Step f = sys.step(0);
    const auto v = sys.codomain(0);
    if (!v) {
        throw Error(ErrorKind::configuration, "uniform bound needs the codomain V_0");
    }
    for (std::size_t i = 1; i < std::max<std::size_t>(n, 1); ++i) {
        const Step fi = sys.step(i);
        const auto vi = sys.codomain(i);
        if (f.kind() != Step::Kind::polynomial || fi.kind() != Step::Kind::polynomial || !(fi.poly() == f.poly()) ||
            !vi || !(vi->center == v->center) || vi->radius != v->radius) {
            throw Error(ErrorKind::inapplicable, "uniform bound needs identical steps and codomains (index " +
                                                     std::to_string(i) + " differs)");
        }
    }
    return uniform_bound_identical_step(f, sys.domain(), *v, n);
}

int cmd_bound(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::json);
    const auto e = load_entry(o);
    ErrorBoundReport report;
    if (o.variant == "A") {
        report = error_bound_starlike(e.system, o.n, e.row_deviation(o.n));
    } else if (o.variant == "B") {
        report = error_bound_starlike(e.system, o.n);
    } else if (o.variant == "uniform") {
        report = uniform_variant(e, o.n);
    } else if (o.variant == "fde") {
        report = catalog_fde_bound(e, o.n);
    } else if (o.variant == "closed-form") {
        report = catalog_closed_form_bound(e, o.n);
    } else {
        throw Error(ErrorKind::usage, "unknown variant '" + o.variant + "' (A, B, uniform, fde, closed-form)");
    }
    if (fmt == OutputFormat::csv) {
        out << "entry,n,formula,coefficient,exponent,radius,value,rigorous\n"
            << csv_field(e.name) << ',' << report.n << ',' << csv_field(report.formula) << ','
            << format_float(report.coefficient) << ',' << report.exponent << ',' << format_float(report.radius)
            << ',' << format_float(report.value()) << ',' << (report.rigorous ? "true" : "false") << '\n';
        return 0;
    }
    json doc = to_json(report);
    doc["entry"] = e.name;
    doc["params"] = params_json(e);
    doc["variant"] = o.variant;
    emit(out, doc);
    return 0;
}

int cmd_numeric(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::csv);
    const auto e = load_entry(o);
    const auto vertices = path_vertices(o, e);
    const auto path = polyline_partition(vertices, o.segments);
    const auto table = numeric_approximate(e.system, path, o.n);
    if (fmt == OutputFormat::csv) {
        out << numeric_csv(path, table);
        return 0;
    }
    json values = json::array();
    for (Eigen::Index k = 0; k < table.values.cols(); ++k) {
        values.push_back({{"x", complex_json(path.points[static_cast<std::size_t>(k)])},
                          {"g", complex_json(table.values(0, k))}});
    }
    emit(out, {{"entry", e.name},
               {"params", params_json(e)},
               {"n", o.n},
               {"N", path.segments()},
               {"mesh", float_json(path.mesh())},
               {"terminal", complex_json(table.terminal())},
               {"values", std::move(values)}});
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const auto fmt = format_of(o, OutputFormat::json);
    const auto report = run_verify(parse_scope(o.scope));
    if (fmt == OutputFormat::csv) {
        out << "scope,name,passed,detail\n";
        for (const auto& c : report.checks) {
            out << csv_field(c.scope) << ',' << csv_field(c.name) << ',' << (c.passed ? "true" : "false") << ','
                << csv_field(c.detail.dump()) << '\n';
        }
    } else {
        emit(out, report.to_json());
    }
    return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Approximation systems: exact approximants, error bounds and numeric marching", "approxsys"};
    app.require_subcommand(1);
    Options o;

    const auto entry_options = [&o](CLI::App* cmd) {
        cmd->add_option("entry", o.entry, "catalog entry")->required();
        cmd->add_option("--p", o.p, "integer parameter p");
        cmd->add_option("--R", o.radius, "domain radius");
        cmd->add_option("--alpha", o.alpha, "delay parameter alpha in (0,1)");
        cmd->add_option("--n", o.n, "approximation order");
    };
    const auto format_option = [&o](CLI::App* cmd) { cmd->add_option("--format", o.format, "json or csv"); };

    auto* list = app.add_subcommand("list", "catalog entries and their parameters");
    format_option(list);

    auto* approximate = app.add_subcommand("approximate", "exact coefficients of g^[n]");
    entry_options(approximate);
    format_option(approximate);
    approximate->add_flag("--all-rows", o.all_rows, "emit every row g_i^[n]");

    auto* eval = app.add_subcommand("eval", "g^[n] against the reference on a grid");
    entry_options(eval);
    format_option(eval);
    eval->add_option("--segment", o.segment, "a,b");
    eval->add_option("--circle", o.circle, "center,radius");
    eval->add_option("--polyline", o.polyline, "not supported for eval grids");
    eval->add_option("--points", o.points, "grid size");

    auto* bound = app.add_subcommand("bound", "error bound report");
    entry_options(bound);
    format_option(bound);
    bound->add_option("--variant", o.variant, "A, B, uniform, fde or closed-form");

    auto* numeric = app.add_subcommand("numeric", "Euler marching along a path");
    entry_options(numeric);
    format_option(numeric);
    numeric->add_option("--segment", o.segment, "a,b");
    numeric->add_option("--polyline", o.polyline, "x0,x1,...");
    numeric->add_option("--N", o.segments, "subintervals per segment");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("scope", o.scope, "all, prefix, bounds, shifts, positivity or numeric");
    format_option(verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error (usage): " << e.what() << '\n';
        return 2;
    }

    try {
        if (list->parsed()) {
            return cmd_list(o, out);
        }
        if (approximate->parsed()) {
            return cmd_approximate(o, out);
        }
        if (eval->parsed()) {
            return cmd_eval(o, out);
        }
        if (bound->parsed()) {
            return cmd_bound(o, out);
        }
        if (numeric->parsed()) {
            return cmd_numeric(o, out);
        }
        return cmd_verify(o, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 2;
}

}  // namespace approxsys
