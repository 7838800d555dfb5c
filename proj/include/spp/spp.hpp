#pragma once

// Umbrella header for the subpath planning library.

#include "spp/cspp.hpp"
#include "spp/errors.hpp"
#include "spp/exact.hpp"
#include "spp/ga.hpp"
#include "spp/geometry.hpp"
#include "spp/graph.hpp"
#include "spp/matching.hpp"
#include "spp/multigraph.hpp"
#include "spp/rng.hpp"
#include "spp/solution.hpp"
#include "spp/transform.hpp"
#include "spp/triangle_repair.hpp"
#include "spp/verify.hpp"
#include "spp/weight.hpp"
#include "spp/workspace.hpp"
