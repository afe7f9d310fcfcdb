#pragma once

#include "zetalaw/analytic.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/error.hpp"
#include "zetalaw/field_data.hpp"
#include "zetalaw/li.hpp"
#include "zetalaw/quadrature.hpp"
#include "zetalaw/sampler.hpp"
#include "zetalaw/suites.hpp"
#include "zetalaw/verify.hpp"
