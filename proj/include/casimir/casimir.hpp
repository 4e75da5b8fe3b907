#pragma once

#include "constants.hpp"
#include "errors.hpp"
#include "lens_geometry.hpp"
#include "metrology.hpp"
#include "pfa.hpp"
#include "plate_energy.hpp"
#include "quadrature.hpp"
#include "units.hpp"
