#ifndef APPROXSYS_CATALOG_HPP
#define APPROXSYS_CATALOG_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "approxsys/analysis.hpp"
#include "approxsys/system.hpp"

namespace approxsys {

struct CatalogParams {
    unsigned p = 2;
    /// Domain radius; entries pick their own default when unset.
    std::optional<double> radius;
    GaussianRational alpha = GaussianRational::fraction(1, 2);
};

/// A named example system with its target function and known bounds.
struct CatalogEntry {
    CatalogEntry(std::string entry_name, CatalogParams entry_params, double entry_radius, ApproxSystem entry_system)
        : name(std::move(entry_name)), params(std::move(entry_params)), radius(entry_radius),
          system(std::move(entry_system))
    {
    }

    std::string name;
    CatalogParams params;
    double radius = 1.0;
    ApproxSystem system;
    /// The function g approximated by g^[n].
    std::function<Complex(Complex)> reference;
    /// g_i, the functions matched by the lower rows.
    RowReference row_reference;
    /// ||g_i - g_i(x0)|| on the domain disk.
    std::function<double(std::size_t)> row_deviation;
    /// Taylor coefficients of g about x0 through x^m.
    std::function<std::vector<GaussianRational>(std::size_t m)> taylor_coefficients;
    /// Closed-form error bound on the domain disk, by order n.
    std::function<double(std::size_t n)> closed_form_bound;
    std::optional<Parity> parity;
    std::string notes;
};

struct CatalogInfo {
    std::string name;
    std::string parameters;
    std::string notes;
};

/// Names and parameter schemas, in listing order.
const std::vector<CatalogInfo>& catalog_list();

/// Throws ErrorKind::parameter for unknown names or invalid parameters.
CatalogEntry catalog_get(const std::string& name, const CatalogParams& params = {});

/// max |g(x) - g^[n](x)| over the grid.
double reference_error_grid(const CatalogEntry& entry, std::size_t n, const std::vector<Complex>& grid);

/// Functional-equation bound for an entry, including its closed form when known.
ErrorBoundReport catalog_fde_bound(const CatalogEntry& entry, std::size_t n);

/// The closed-form bound packaged as a report.
ErrorBoundReport catalog_closed_form_bound(const CatalogEntry& entry, std::size_t n);

}  // namespace approxsys

#endif  // APPROXSYS_CATALOG_HPP
