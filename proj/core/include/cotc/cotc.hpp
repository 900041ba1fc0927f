#pragma once

#include "cotc/bifurcation.hpp"
#include "cotc/errors.hpp"
#include "cotc/harmonic_balance.hpp"
#include "cotc/model.hpp"
#include "cotc/numeric.hpp"
#include "cotc/sampled_data.hpp"
#include "cotc/simulator.hpp"
