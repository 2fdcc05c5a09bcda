#pragma once

#include "mixpack/bounds.hpp"
#include "mixpack/decomposition.hpp"
#include "mixpack/digraph_packing.hpp"
#include "mixpack/errors.hpp"
#include "mixpack/index_set.hpp"
#include "mixpack/mixed_graph.hpp"
#include "mixpack/orientation_solver.hpp"
#include "mixpack/parse.hpp"
#include "mixpack/pipeline.hpp"
