#pragma once

#include "kwright/gamma.hpp"
#include "kwright/hypergeometric.hpp"
#include "kwright/kwright_series.hpp"
#include "kwright/operators.hpp"
#include "kwright/oracle.hpp"
#include "kwright/quadrature.hpp"
#include "kwright/types.hpp"
#include "kwright/verification.hpp"
