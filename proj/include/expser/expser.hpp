#pragma once

#include "expser/ceoperator.hpp"
#include "expser/compensated.hpp"
#include "expser/errors.hpp"
#include "expser/figures.hpp"
#include "expser/funcseries.hpp"
#include "expser/polycore.hpp"
#include "expser/serieseval.hpp"
#include "expser/special.hpp"
#include "expser/verify.hpp"
