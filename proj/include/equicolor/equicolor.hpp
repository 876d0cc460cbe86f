#pragma once

#include "error.hpp"
#include "graph.hpp"
#include "graph_core.hpp"
#include "oracle.hpp"
#include "forest_coloring.hpp"
#include "partitioner.hpp"
#include "outerplanar_coloring.hpp"
#include "planar_coloring.hpp"
#include "constructions.hpp"
#include "io.hpp"
