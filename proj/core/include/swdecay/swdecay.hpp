#pragma once

#include "swdecay/adiabatic.hpp"
#include "swdecay/analysis.hpp"
#include "swdecay/csv.hpp"
#include "swdecay/diffraction.hpp"
#include "swdecay/errors.hpp"
#include "swdecay/ladder.hpp"
#include "swdecay/model.hpp"
#include "swdecay/quadrature.hpp"
#include "swdecay/quasienergy.hpp"
#include "swdecay/special_functions.hpp"
