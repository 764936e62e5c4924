#pragma once

#include "modcoeff/arithmetic.hpp"
#include "modcoeff/bounds.hpp"
#include "modcoeff/coeff_engine.hpp"
#include "modcoeff/density.hpp"
#include "modcoeff/diophantine.hpp"
#include "modcoeff/error.hpp"
#include "modcoeff/polynomial.hpp"
#include "modcoeff/real.hpp"
