#pragma once

#include "qie/cycle.hpp"
#include "qie/errors.hpp"
#include "qie/isotherm.hpp"
#include "qie/measurement.hpp"
#include "qie/ode.hpp"
#include "qie/optimize.hpp"
#include "qie/states.hpp"
