#pragma once

// Online learning with improving agents: improvement graphs, mistake-bound
// dimensions, the matching optimal learners and adversaries, a game engine,
// and an exact small-instance game solver. Everything is header-only; include
// this to get the whole library.

#include "olimp/adversary.hpp"
#include "olimp/bitset.hpp"
#include "olimp/dimensions.hpp"
#include "olimp/engine.hpp"
#include "olimp/generator.hpp"
#include "olimp/json_io.hpp"
#include "olimp/learner.hpp"
#include "olimp/model.hpp"
#include "olimp/optimal_learners.hpp"
#include "olimp/oracle.hpp"
#include "olimp/reduction.hpp"
#include "olimp/report.hpp"
#include "olimp/response.hpp"
#include "olimp/trees.hpp"
#include "olimp/types.hpp"
#include "olimp/version_space.hpp"
