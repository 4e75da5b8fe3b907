#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lens_geometry.hpp"
#include "plate_energy.hpp"
#include "quadrature.hpp"

/*!
 * \file pfa.hpp
 * Lens-plate Casimir forces in the proximity force approximation.
 *
 * Signs: the plate free energy and pressure are negative, so every signed
 * force below is negative for attraction. ForceResult reports the magnitude
 * together with an explicit attractive flag.
 */

namespace casimir {

enum class ForceMethod
{
    general_quadrature,  //!< surface integral of the plate pressure
    perfect_full,        //!< perfect lens of thickness D, all three terms
    perfect_simplified,  //!< 2 pi R F_pp(a)
    bubble,              //!< 2 pi (R - R1) F_pp(a + D1) + 2 pi R1 F_pp(a)
    pit,                 //!< 2 pi (R - R1) F_pp(a) + 2 pi R1 F_pp(a + D1)
};

inline char const* to_string(ForceMethod m)
{
    switch (m)
    {
        case ForceMethod::general_quadrature: return "quadrature";
        case ForceMethod::perfect_full: return "full";
        case ForceMethod::perfect_simplified: return "simplified";
        case ForceMethod::bubble: return "bubble";
        case ForceMethod::pit: return "pit";
    }
    return "unknown";
}

struct ForceResult
{
    double magnitude = 0;  //!< |F| [N]
    bool attractive = true;
    ForceMethod method = ForceMethod::perfect_simplified;
    double separation = 0;   //!< a [m]
    double temperature = 0;  //!< T [K]
    double error_estimate = 0;  //!< absolute, quadrature-based methods only
    std::vector<std::string> warnings;

    double signed_value() const { return attractive ? -magnitude : magnitude; }
};

//! Plate pressure kernel used by the surface integral.
struct PlatePressure
{
    double operator()(double z, double T) const { return pressure_pp(z, T); }
};

namespace detail {
inline ForceResult
make_force(double signed_force, ForceMethod method, double a, double T)
{
    ForceResult r;
    r.magnitude = std::abs(signed_force);
    r.attractive = signed_force < 0;
    r.method = method;
    r.separation = a;
    r.temperature = T;
    return r;
}

inline void check_separation(double a, double T)
{
    if (!(a > 0))
        throw DomainError("force: separation must be positive");
    if (!(T >= 0))
        throw DomainError("force: temperature must be non-negative");
}

//! Lateral length over which the surface rises by about a.
inline double contact_scale(double radius, double a)
{
    return std::sqrt(2 * radius * a);
}
}  // namespace detail

/*!
 * Signed surface integral 2 pi int rho P(z(rho), T) d rho over the lens
 * projection, split at the imperfection seam. The kernel maps (z, T) to a
 * pressure and defaults to the ideal-metal plate pressure.
 */
template<class Kernel = PlatePressure>
QuadratureResult integrate_pressure(LensProfile const& profile,
                                    double a,
                                    double T,
                                    Kernel&& kernel = {},
                                    QuadratureOptions const& opts = {})
{
    detail::check_separation(a, T);
    SurfaceHeight const height{profile, a};
    auto const integrand = [&](double rho) {
        return 2 * std::numbers::pi * rho * kernel(height(rho), T);
    };

    // Pressure decays over ~sqrt(2 R a) beyond the seam; cluster breakpoints
    // there so the outer region out to the lens rim stays cheap.
    double const seam = height.seam();
    double const scale = detail::contact_scale(
        std::min(profile.radius(), profile.has_imperfection()
                                       ? profile.imperfection_radius()
                                       : profile.radius()),
        a);
    auto breakpoints
        = geometric_breakpoints(seam, height.extent(), 0.25 * scale);
    breakpoints.push_back(seam);
    return integrate(integrand, 0.0, height.extent(), breakpoints, opts);
}

//! Force from the general surface integral of the plate pressure.
inline ForceResult force_general(LensProfile const& profile,
                                 double a,
                                 double T,
                                 double quad_tol = 1e-9)
{
    QuadratureOptions opts;
    opts.rel_tol = quad_tol;
    auto const q = integrate_pressure(profile, a, T, PlatePressure{}, opts);
    auto result = detail::make_force(q.value, ForceMethod::general_quadrature, a, T);
    result.error_estimate = q.error;
    return result;
}

/*!
 * Perfect lens of radius R and thickness D, after integrating the pressure
 * integral by parts:
 *   2 pi R F(a) - 2 pi (R - D) F(D + a) - 2 pi int_a^{D+a} F(z) dz.
 * The last integral is done in log z.
 */
inline ForceResult force_perfect_full(double a,
                                      double T,
                                      double radius,
                                      double thickness,
                                      double quad_tol = 1e-9)
{
    detail::check_separation(a, T);
    if (!(radius > 0 && thickness > 0 && thickness <= 2 * radius))
        throw DomainError("force_perfect_full: need R > 0 and 0 < D <= 2R");

    auto const energy = [T](double z) { return free_energy_pp(z, T).value; };
    double const rim_term
        = radius == thickness ? 0.0
                              : (radius - thickness) * energy(thickness + a);

    QuadratureOptions opts;
    opts.rel_tol = quad_tol;
    auto const tail = integrate(
        [&](double s) {
            double const z = std::exp(s);
            return energy(z) * z;
        },
        std::log(a), std::log(thickness + a), {}, opts);

    double const two_pi = 2 * std::numbers::pi;
    double const f = two_pi * radius * energy(a) - two_pi * rim_term
                     - two_pi * tail.value;
    auto result = detail::make_force(f, ForceMethod::perfect_full, a, T);
    result.error_estimate = two_pi * tail.error;
    return result;
}

//! Leading-order sphere-plate force 2 pi R F_pp(a, T).
inline ForceResult force_perfect_simplified(double a, double T, double radius)
{
    detail::check_separation(a, T);
    if (!(radius > 0))
        throw DomainError("force_perfect_simplified: radius must be positive");
    double const f = 2 * std::numbers::pi * radius * free_energy_pp(a, T).value;
    auto result = detail::make_force(f, ForceMethod::perfect_simplified, a, T);
    if (!(a < 1e-2 * radius))
        result.warnings.emplace_back("separation is not small compared to R");
    return result;
}

//! Bubble of radius R1 and height D1 at the point of closest approach.
inline ForceResult
force_bubble(double a, double T, double radius, double r1, double d1)
{
    detail::check_separation(a, T);
    if (!(radius > 0 && r1 >= 0 && d1 >= 0))
        throw DomainError("force_bubble: need R > 0, R1 >= 0, D1 >= 0");
    double const two_pi = 2 * std::numbers::pi;
    double const f = two_pi * (radius - r1) * free_energy_pp(a + d1, T).value
                     + two_pi * r1 * free_energy_pp(a, T).value;
    return detail::make_force(f, ForceMethod::bubble, a, T);
}

//! Pit of radius R1 < R and depth D1; a is measured to its rim.
inline ForceResult
force_pit(double a, double T, double radius, double r1, double d1)
{
    detail::check_separation(a, T);
    if (!(radius > 0 && r1 >= 0 && r1 < radius && d1 >= 0))
        throw DomainError("force_pit: need R > 0, 0 <= R1 < R, D1 >= 0");
    double const two_pi = 2 * std::numbers::pi;
    double const f = two_pi * (radius - r1) * free_energy_pp(a, T).value
                     + two_pi * r1 * free_energy_pp(a + d1, T).value;
    return detail::make_force(f, ForceMethod::pit, a, T);
}

//! Closed-form force matching the profile kind (simplified for a perfect lens).
inline ForceResult
force_closed_form(LensProfile const& profile, double a, double T)
{
    switch (profile.kind())
    {
        case LensKind::perfect:
            return force_perfect_simplified(a, T, profile.radius());
        case LensKind::bubble:
            return force_bubble(a, T, profile.radius(),
                                profile.imperfection_radius(),
                                profile.imperfection_depth());
        case LensKind::pit:
            return force_pit(a, T, profile.radius(),
                             profile.imperfection_radius(),
                             profile.imperfection_depth());
    }
    throw DomainError("force_closed_form: unknown profile kind");
}

//! Force normalised by the simplified perfect-lens force at the same a, T, R.
struct RatioCurve
{
    std::vector<double> separations;
    std::vector<double> ratios;
    LensProfile profile;
};

inline RatioCurve ratio_curve(LensProfile const& profile,
                              std::span<double const> separations,
                              double T)
{
    if (!profile.has_imperfection())
        throw DomainError("ratio_curve: profile must be a bubble or a pit");

    RatioCurve curve{{separations.begin(), separations.end()}, {}, profile};
    curve.ratios.reserve(separations.size());
    for (double a : separations)
    {
        double const f = force_closed_form(profile, a, T).signed_value();
        double const ref
            = force_perfect_simplified(a, T, profile.radius()).signed_value();
        curve.ratios.push_back(f / ref);
    }
    return curve;
}

}  // namespace casimir
