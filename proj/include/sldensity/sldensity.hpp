#pragma once

#include "sldensity/appell.hpp"
#include "sldensity/density.hpp"
#include "sldensity/error.hpp"
#include "sldensity/frobenius.hpp"
#include "sldensity/integrator.hpp"
#include "sldensity/potential.hpp"
#include "sldensity/quadrature.hpp"
#include "sldensity/reference.hpp"
#include "sldensity/spectral_function.hpp"
