#pragma once

#include "bayesbias/rational.hpp"
#include "bayesbias/feasibility.hpp"
#include "bayesbias/evidence.hpp"
#include "bayesbias/beliefs.hpp"
#include "bayesbias/balance.hpp"
#include "bayesbias/constructions.hpp"
#include "bayesbias/classify.hpp"
#include "bayesbias/plans.hpp"
#include "bayesbias/io.hpp"
