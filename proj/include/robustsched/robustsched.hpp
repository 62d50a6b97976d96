#pragma once
// Umbrella header.

#include "robustsched/bench.hpp"
#include "robustsched/detopt.hpp"
#include "robustsched/errors.hpp"
#include "robustsched/evaluate.hpp"
#include "robustsched/model.hpp"
#include "robustsched/rng.hpp"
#include "robustsched/robustbound.hpp"
#include "robustsched/search.hpp"
#include "robustsched/worstcase.hpp"
