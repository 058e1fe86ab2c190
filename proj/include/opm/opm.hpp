#pragma once

#include "opm/core.hpp"
#include "opm/decimal.hpp"
#include "opm/io.hpp"
#include "opm/multi_matcher.hpp"
#include "opm/oracle.hpp"
#include "opm/order_stat_tree.hpp"
#include "opm/representations.hpp"
#include "opm/single_matcher.hpp"
