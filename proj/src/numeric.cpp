#include "approxsys/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "approxsys/error.hpp"

namespace approxsys {

std::vector<Complex> PathPartition::deltas() const
{
    std::vector<Complex> out;
    for (std::size_t k = 0; k < segments(); ++k) {
        out.push_back(delta(k));
    }
    return out;
}

double PathPartition::mesh() const
{
    double m = 0.0;
    for (std::size_t k = 0; k < segments(); ++k) {
        m = std::max(m, std::abs(delta(k)));
    }
    return m;
}

PathPartition straight_partition(Complex x0, Complex x1, std::size_t n_segments)
{
    if (n_segments == 0) {
        throw Error(ErrorKind::partition, "a path partition needs N >= 1");
    }
    PathPartition path;
    path.points.reserve(n_segments + 1);
    const double n = static_cast<double>(n_segments);
    for (std::size_t k = 0; k <= n_segments; ++k) {
        const double t = static_cast<double>(k) / n;
        path.points.push_back(k == n_segments ? x1 : x0 + (x1 - x0) * t);
    }
    return path;
}

PathPartition polyline_partition(const std::vector<Complex>& vertices, std::size_t per_segment)
{
    if (vertices.size() < 2) {
        throw Error(ErrorKind::partition, "a polyline needs at least 2 vertices");
    }
    PathPartition path;
    path.points.push_back(vertices.front());
    for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
        const auto edge = straight_partition(vertices[s], vertices[s + 1], per_segment);
        path.points.insert(path.points.end(), edge.points.begin() + 1, edge.points.end());
    }
    return path;
}

NumericTable numeric_approximate(const ApproxSystem& sys, const PathPartition& path, std::size_t n,
                                 const NumericOptions& options)
{
    if (path.points.size() < 2) {
        throw Error(ErrorKind::partition, "a path partition needs N >= 1");
    }
    if (sys.order() && n > *sys.order()) {
        throw Error(ErrorKind::order, "order " + std::to_string(n) + " exceeds the system order");
    }
    const Complex x0 = sys.x0().to_complex();
    if (std::abs(path.points.front() - x0) > 1e-12 * std::max(1.0, std::abs(x0))) {
        throw Error(ErrorKind::partition, "the path must start at the basepoint");
    }

    const std::size_t last = path.segments();
    const std::size_t truncation = options.series_truncation.value_or(default_truncation(n));
    std::vector<Evaluator> steps;
    for (std::size_t i = 0; i < n; ++i) {
        steps.push_back(sys.step(i).numeric(truncation));
    }

    NumericTable table;
    table.n = n;
    table.values.resize(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(last + 1));
    for (std::size_t i = 0; i <= n; ++i) {
        table.values(static_cast<Eigen::Index>(i), 0) = sys.coefficient(i).to_complex();
    }
    table.values.row(static_cast<Eigen::Index>(n)).setConstant(sys.coefficient(n).to_complex());

    auto& v = table.values;
    const auto update = [&](std::size_t i, std::size_t k) {
        const auto r = static_cast<Eigen::Index>(i);
        const auto c = static_cast<Eigen::Index>(k);
        const Complex next = v(r, c - 1) + steps[i](v(r + 1, c - 1), path.points[k - 1]) * path.delta(k - 1);
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
            throw Error(ErrorKind::marching,
                        "non-finite value at i = " + std::to_string(i) + ", k = " + std::to_string(k));
        }
        v(r, c) = next;
    };

    if (options.order == LoopOrder::step_outer) {
        for (std::size_t k = 1; k <= last; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                update(i, k);
            }
        }
    } else {
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = 1; k <= last; ++k) {
                update(i, k);
            }
        }
    }
    return table;
}

}  // namespace approxsys
