#pragma once

#include "qrw/analytic.hpp"
#include "qrw/coin.hpp"
#include "qrw/entanglement.hpp"
#include "qrw/parallel.hpp"
#include "qrw/shift.hpp"
#include "qrw/sweep.hpp"
#include "qrw/types.hpp"
#include "qrw/walk.hpp"
