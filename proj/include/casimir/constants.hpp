#pragma once

#include <numbers>

namespace casimir {

//! SI constants entering the thermal free energy. All values are the exact
//! 2019 SI defining constants; hbar is derived from the exact Planck constant.
struct PhysicalConstants
{
    //! Boltzmann constant [J/K]
    static constexpr double boltzmann = 1.380649e-23;
    //! Planck constant [J s]
    static constexpr double planck = 6.62607015e-34;
    //! Reduced Planck constant [J s], 1.0545718176461565e-34 as stored
    static constexpr double reduced_planck = planck / (2 * std::numbers::pi);
    //! Speed of light in vacuum [m/s]
    static constexpr double light_speed = 299792458.0;
};

static_assert(PhysicalConstants::boltzmann > 0);
static_assert(PhysicalConstants::reduced_planck > 0);
static_assert(PhysicalConstants::light_speed > 0);

//! Riemann zeta(3) (Apery's constant), 16 significant digits
inline constexpr double zeta3 = 1.202056903159594;

namespace units {
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;
inline constexpr double cm = 1e-2;
inline constexpr double m = 1.0;
}  // namespace units

}  // namespace casimir
