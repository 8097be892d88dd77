#pragma once

// Umbrella header: the whole library.

#include "itrail/analytics.hpp"
#include "itrail/generators.hpp"
#include "itrail/girth.hpp"
#include "itrail/graph.hpp"
#include "itrail/harness.hpp"
#include "itrail/ordering.hpp"
#include "itrail/prune.hpp"
#include "itrail/rng.hpp"
#include "itrail/solvers.hpp"
#include "itrail/stitching.hpp"
#include "itrail/textio.hpp"
#include "itrail/trail.hpp"
#include "itrail/trail_json.hpp"
#include "itrail/tree_search.hpp"
#include "itrail/worstcase.hpp"
