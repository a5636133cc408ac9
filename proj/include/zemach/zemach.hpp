#pragma once

#include "zemach/budget.hpp"
#include "zemach/cli.hpp"
#include "zemach/constants.hpp"
#include "zemach/errors.hpp"
#include "zemach/extraction.hpp"
#include "zemach/formfactors.hpp"
#include "zemach/measurement.hpp"
#include "zemach/quadrature.hpp"
#include "zemach/radius.hpp"
#include "zemach/report.hpp"
