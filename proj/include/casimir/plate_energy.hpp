#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "constants.hpp"
#include "errors.hpp"

/*!
 * \file plate_energy.hpp
 * Casimir free energy per unit area and pressure between two parallel ideal
 * metal plates at separation z and temperature T.
 *
 * The Matsubara sum is used in its closed single-series form
 * \f[
 *   F(z,T) = -\frac{k_B T}{4\pi z^2}\Bigl[\frac{\zeta(3)}{2}
 *     + \sum_{n\ge1}\frac{e^{-\tau n}}{n^2(1-e^{-\tau n})}
 *       \Bigl(\frac1n + \frac{\tau}{1-e^{-\tau n}}\Bigr)\Bigr],
 *   \qquad \tau = \frac{4\pi z k_B T}{\hbar c}.
 * \f]
 * The bracket depends on tau alone. free_energy_pp_oracle evaluates the
 * unsummed Matsubara series with a numerical momentum integral and is kept
 * as an independent check.
 */

namespace casimir {

//! Smallest tau accepted by the closed series.
inline constexpr double tau_min = 1e-3;

//! Dimensionless thermal parameter 4 pi z k_B T / (hbar c).
inline double tau(double z, double T)
{
    if (!(z > 0))
        throw DomainError("tau: separation must be positive");
    if (!(T >= 0))
        throw DomainError("tau: temperature must be non-negative");
    using C = PhysicalConstants;
    return 4 * std::numbers::pi * z * C::boltzmann * T
           / (C::reduced_planck * C::light_speed);
}

//! Evaluation point (z [m], T [K]) with its derived thermal parameter.
class ThermalPoint
{
  public:
    ThermalPoint(double z, double T) : z_(z), T_(T), tau_(casimir::tau(z, T))
    {
    }

    double separation() const noexcept { return z_; }
    double temperature() const noexcept { return T_; }
    double tau() const noexcept { return tau_; }

    //! T_eff with k_B T_eff = hbar c / (2 z); tau = 2 pi T / T_eff.
    double effective_temperature() const noexcept
    {
        using C = PhysicalConstants;
        return C::reduced_planck * C::light_speed / (2 * z_ * C::boltzmann);
    }

  private:
    double z_;
    double T_;
    double tau_;
};

enum class EnergyRegime
{
    thermal,
    zero_temperature,
};

//! Free energy per unit area [J/m^2].
struct FreeEnergyAreal
{
    double value = 0;
    //! zeta(3)/2 + series; NaN on the zero-temperature path
    double bracket = std::numeric_limits<double>::quiet_NaN();
    std::size_t terms_used = 0;
    EnergyRegime regime = EnergyRegime::thermal;
};

//! Truncation control for the closed series.
struct SeriesOptions
{
    double rel_cutoff = 1e-12;
    std::size_t max_terms = 1'000'000;
};

//! Ideal-metal T = 0 limit, -pi^2 hbar c / (720 z^3).
inline double zero_temperature_free_energy(double z)
{
    using C = PhysicalConstants;
    double const pi2 = std::numbers::pi * std::numbers::pi;
    return -pi2 * C::reduced_planck * C::light_speed / (720 * z * z * z);
}

//! Ideal-metal T = 0 pressure, -pi^2 hbar c / (240 z^4).
inline double zero_temperature_pressure(double z)
{
    using C = PhysicalConstants;
    double const pi2 = std::numbers::pi * std::numbers::pi;
    return -pi2 * C::reduced_planck * C::light_speed / (240 * z * z * z * z);
}

namespace detail {

//! Bracket B(tau) and the sum S(tau) with B'(tau) = -tau S(tau).
struct ThermalSeries
{
    double bracket = 0;
    double slope_sum = 0;
    std::size_t terms = 0;
};

/*!
 * Sum the closed series. With x = exp(-tau n) and u = 1/(1 - x):
 *   term_n  = x u / n^3 + tau x u^2 / n^2
 *   dterm_n/dtau = -tau x u^2 (1 + 2 x u) / n
 * Stops once both the energy and the slope contributions are below
 * rel_cutoff of their running totals.
 */
inline ThermalSeries thermal_series(double t, SeriesOptions const& opts)
{
    if (t < tau_min)
    {
        throw SlowConvergenceError(
            "thermal series: tau below 1e-3 converges too slowly; use the "
            "zero-temperature asymptote or free_energy_pp_oracle");
    }
    ThermalSeries s;
    s.bracket = zeta3 / 2;
    for (std::size_t n = 1;; ++n)
    {
        double const dn = static_cast<double>(n);
        double const x = std::exp(-t * dn);
        double const one_minus_x = -std::expm1(-t * dn);
        double const u = 1 / one_minus_x;
        double const xu = x * u;
        double const term = xu / (dn * dn * dn) + t * xu * u / (dn * dn);
        double const slope = xu * u * (1 + 2 * xu) / dn;
        s.bracket += term;
        s.slope_sum += slope;
        s.terms = n;
        bool const energy_done = term < opts.rel_cutoff * s.bracket;
        bool const slope_done = t * t * slope
                                < opts.rel_cutoff
                                      * (2 * s.bracket + t * t * s.slope_sum);
        if (energy_done && slope_done)
            break;
        if (n >= opts.max_terms)
        {
            throw SlowConvergenceError(
                "thermal series: term cap reached before convergence");
        }
    }
    return s;
}

inline double thermal_prefactor(double z, double T)
{
    return PhysicalConstants::boltzmann * T / (4 * std::numbers::pi * z * z);
}

}  // namespace detail

//! Free energy per unit area of two ideal-metal plates.
inline FreeEnergyAreal
free_energy_pp(ThermalPoint const& p, SeriesOptions const& opts = {})
{
    FreeEnergyAreal result;
    if (p.temperature() == 0)
    {
        result.value = zero_temperature_free_energy(p.separation());
        result.regime = EnergyRegime::zero_temperature;
        return result;
    }
    auto const s = detail::thermal_series(p.tau(), opts);
    result.bracket = s.bracket;
    result.terms_used = s.terms;
    result.value = -detail::thermal_prefactor(p.separation(), p.temperature())
                   * s.bracket;
    return result;
}

inline FreeEnergyAreal
free_energy_pp(double z, double T, SeriesOptions const& opts = {})
{
    return free_energy_pp(ThermalPoint{z, T}, opts);
}

/*!
 * Pressure P = -dF/dz [N/m^2], negative for attraction.
 *
 * Differentiating F = -(k_B T / 4 pi z^2) B(tau) with tau proportional to z
 * gives P = -(k_B T / 4 pi z^3) [2 B + tau^2 S].
 */
inline double pressure_pp(ThermalPoint const& p, SeriesOptions const& opts = {})
{
    if (p.temperature() == 0)
        return zero_temperature_pressure(p.separation());
    auto const s = detail::thermal_series(p.tau(), opts);
    double const t = p.tau();
    return -detail::thermal_prefactor(p.separation(), p.temperature())
           / p.separation() * (2 * s.bracket + t * t * s.slope_sum);
}

inline double pressure_pp(double z, double T, SeriesOptions const& opts = {})
{
    return pressure_pp(ThermalPoint{z, T}, opts);
}

//---------------------------------------------------------------------------//
// Brute-force Matsubara sum
//---------------------------------------------------------------------------//

struct OracleResult
{
    FreeEnergyAreal energy;
    //! False when l_max was reached before the tail bound fell below tol
    bool converged = false;
    //! Upper bound on the neglected sum over l, relative to the bracket
    double relative_tail_bound = 0;
};

namespace detail {

//! Bound on sum_{l >= m} I(tau l) with I(x) = -int_x^inf y ln(1 - e^-y) dy.
//! Uses -ln(1 - e^-y) <= e^-y / (1 - e^-x) for y >= x.
inline double matsubara_tail_bound(double t, std::size_t m)
{
    double const q = std::exp(-t);
    double const qm = std::exp(-t * static_cast<double>(m));
    double const one_minus_q = -std::expm1(-t);
    double const dm = static_cast<double>(m);
    double const sum = qm
                       * ((t * dm + 1) / one_minus_q
                          + t * q / (one_minus_q * one_minus_q));
    return sum / -std::expm1(-t * dm);
}

}  // namespace detail

/*!
 * Evaluate the primed Matsubara sum over l directly. For each l the momentum
 * integral, in the variable y = 2 z q_l, is
 *   I_l = -int_{tau l}^inf y ln(1 - e^{-y}) dy,
 * done by exp-sinh quadrature with the logarithm left unexpanded. Here
 * q_l^2 = k^2 + xi_l^2 / c^2 and xi_l = 2 pi k_B T l / hbar, so the lower
 * limit is 2 z xi_l / c = tau l.
 *
 * Terms l = 0..l_max are summed; the sum stops early once the analytic tail
 * bound drops below quad_tol relative to the running total.
 */
inline OracleResult free_energy_pp_oracle(double z,
                                          double T,
                                          std::size_t l_max = 1'000'000,
                                          double quad_tol = 1e-12)
{
    ThermalPoint const p{z, T};
    if (!(T > 0))
        throw DomainError("free_energy_pp_oracle: temperature must be positive");
    if (!(quad_tol > 0))
        throw DomainError("free_energy_pp_oracle: tolerance must be positive");

    boost::math::quadrature::exp_sinh<double> integrator;
    auto const integrand = [](double y) {
        if (y == 0)
            return 0.0;
        return -y * std::log(-std::expm1(-y));
    };
    // Error is judged against the running sum: far-tail terms are tiny.
    auto const momentum_integral = [&](double lower, double running) {
        double err = 0;
        double const value = integrator.integrate(
            integrand, lower, std::numeric_limits<double>::infinity(),
            quad_tol, &err);
        if (!(err <= quad_tol * std::max(value, running)))
        {
            throw QuadratureError("free_energy_pp_oracle: momentum integral "
                                  "did not converge",
                                  value, err);
        }
        return value;
    };

    double const t = p.tau();
    OracleResult out;
    double sum = momentum_integral(0.0, 0.0) / 2;
    std::size_t l = 0;
    double tail = detail::matsubara_tail_bound(t, 1);
    while (!(tail <= quad_tol * sum) && l < l_max)
    {
        ++l;
        double const lower = t * static_cast<double>(l);
        // I(x) is below the double range of the running sum past this point
        if (lower < 750)
            sum += momentum_integral(lower, sum);
        tail = detail::matsubara_tail_bound(t, l + 1);
    }
    out.converged = tail <= quad_tol * sum;
    out.relative_tail_bound = tail / sum;
    out.energy.bracket = sum;
    out.energy.terms_used = l + 1;
    out.energy.value = -detail::thermal_prefactor(z, T) * sum;
    return out;
}

}  // namespace casimir
