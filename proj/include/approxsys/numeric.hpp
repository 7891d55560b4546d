#ifndef APPROXSYS_NUMERIC_HPP
#define APPROXSYS_NUMERIC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "approxsys/system.hpp"

namespace approxsys {

/// Points gamma(0..N) of a discretized path.
struct PathPartition {
    std::vector<Complex> points;

    std::size_t segments() const noexcept { return points.empty() ? 0 : points.size() - 1; }
    Complex delta(std::size_t k) const { return points.at(k + 1) - points.at(k); }
    std::vector<Complex> deltas() const;
    double mesh() const;
};

/// N + 1 equally spaced points from x0 to x1.
PathPartition straight_partition(Complex x0, Complex x1, std::size_t n_segments);

/// Straight partitions of each edge, joined without repeating the vertices.
PathPartition polyline_partition(const std::vector<Complex>& vertices, std::size_t per_segment);

/// values(i, k) approximates g_i^[n](gamma(k)).
struct NumericTable {
    std::size_t n = 0;
    Eigen::MatrixXcd values;

    Complex terminal() const { return values(0, values.cols() - 1); }
    Eigen::VectorXcd approximant() const { return values.row(0).transpose(); }
};

enum class LoopOrder { index_outer, step_outer };

struct NumericOptions {
    /// Truncation for series steps; defaults to 2n + 6.
    std::optional<std::size_t> series_truncation;
    LoopOrder order = LoopOrder::step_outer;
};

/// Explicit Euler marching of the triangle along the path:
/// v(i, k) = v(i, k-1) + f_i(v(i+1, k-1), gamma(k-1)) delta(k-1).
NumericTable numeric_approximate(const ApproxSystem& sys, const PathPartition& path, std::size_t n,
                                 const NumericOptions& options = {});

}  // namespace approxsys

#endif  // APPROXSYS_NUMERIC_HPP
