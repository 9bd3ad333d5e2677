#pragma once

#include "ond/cfl_online.hpp"
#include "ond/disjoint_sets.hpp"
#include "ond/errors.hpp"
#include "ond/harness.hpp"
#include "ond/hst.hpp"
#include "ond/instance_gen.hpp"
#include "ond/instance_io.hpp"
#include "ond/max_flow.hpp"
#include "ond/metric.hpp"
#include "ond/offline_oracles.hpp"
#include "ond/prize_online.hpp"
#include "ond/problem.hpp"
#include "ond/rentorbuy_online.hpp"
#include "ond/rng.hpp"
#include "ond/run_result.hpp"
#include "ond/solution.hpp"
#include "ond/steiner_online.hpp"
#include "ond/trace.hpp"
#include "ond/tree_oracles.hpp"
