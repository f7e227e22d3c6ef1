#pragma once

#include "darboux/analytic_solution.hpp"
#include "darboux/chain.hpp"
#include "darboux/darboux_operator.hpp"
#include "darboux/errors.hpp"
#include "darboux/exp_sum.hpp"
#include "darboux/grid.hpp"
#include "darboux/jet.hpp"
#include "darboux/oracle.hpp"
#include "darboux/spectral.hpp"
#include "darboux/transformation.hpp"
#include "darboux/verify.hpp"
#include "darboux/wronskian.hpp"
