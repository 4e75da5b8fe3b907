#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace casimir {

struct QuadratureResult
{
    double value = 0;
    double error = 0;  //!< absolute error estimate, summed over pieces
};

//! Settings for piecewise adaptive Gauss-Kronrod integration.
struct QuadratureOptions
{
    double rel_tol = 1e-9;
    unsigned max_depth = 30;
};

namespace detail {
inline std::vector<double>
sorted_unique_breakpoints(double lo, double hi, std::span<double const> inner)
{
    std::vector<double> pts{lo};
    for (double x : inner)
    {
        if (x > lo && x < hi)
            pts.push_back(x);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}
}  // namespace detail

/*!
 * Integrate f over [lo, hi], split at the given interior breakpoints.
 *
 * Each piece is integrated by recursive 31-point Gauss-Kronrod bisection.
 * The summed error estimate must fall below rel_tol * |value|; otherwise a
 * QuadratureError carrying the achieved estimate is thrown.
 */
template<class F>
QuadratureResult integrate(F&& f,
                           double lo,
                           double hi,
                           std::span<double const> breakpoints = {},
                           QuadratureOptions const& opts = {})
{
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

    if (!(lo <= hi))
        throw DomainError("integrate: lower limit exceeds upper limit");

    QuadratureResult result;
    auto const pts = detail::sorted_unique_breakpoints(lo, hi, breakpoints);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        double piece_error = 0;
        result.value += GK::integrate(
            f, pts[i], pts[i + 1], opts.max_depth, opts.rel_tol, &piece_error);
        result.error += piece_error;
    }
    if (!std::isfinite(result.value))
        throw QuadratureError("integrate: non-finite result", result.value,
                              result.error);
    if (result.error > opts.rel_tol * std::abs(result.value)
        && result.error != 0)
    {
        throw QuadratureError("integrate: tolerance not reached",
                              result.value, result.error);
    }
    return result;
}

//! Breakpoints lo + (hi - lo) * ratio^k, k = 1, 2, ..., clustering toward lo
//! until the spacing drops below min_width.
inline std::vector<double>
geometric_breakpoints(double lo, double hi, double min_width, double ratio = 0.25)
{
    std::vector<double> pts;
    for (double w = (hi - lo) * ratio; w > min_width; w *= ratio)
        pts.push_back(lo + w);
    return pts;
}

}  // namespace casimir
