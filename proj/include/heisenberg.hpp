#pragma once

#include "heisenberg/convexity.hpp"
#include "heisenberg/errors.hpp"
#include "heisenberg/geodesic.hpp"
#include "heisenberg/hull.hpp"
#include "heisenberg/point.hpp"
#include "heisenberg/random.hpp"
#include "heisenberg/root_finding.hpp"
