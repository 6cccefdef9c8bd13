#pragma once

// Umbrella header for the finfo information-theory toolkit.

#include "finfo/discrete.hpp"
#include "finfo/errors.hpp"
#include "finfo/estimators.hpp"
#include "finfo/finance.hpp"
#include "finfo/io.hpp"
#include "finfo/kdtree.hpp"
#include "finfo/rolling.hpp"
#include "finfo/rng.hpp"
#include "finfo/sample_matrix.hpp"
#include "finfo/series.hpp"
#include "finfo/special.hpp"
#include "finfo/synthetic.hpp"
