#pragma once

#include "multipack/coordinate.hpp"
#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/graph.hpp"
#include "multipack/instances.hpp"
#include "multipack/io.hpp"
#include "multipack/line_solver.hpp"
#include "multipack/multipacking.hpp"
#include "multipack/parallel.hpp"
#include "multipack/plane_solver.hpp"
#include "multipack/rng.hpp"
#include "multipack/svg.hpp"
