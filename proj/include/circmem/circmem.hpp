#pragma once

// Circulant feedback-network memory analysis: matrix construction, threshold
// dynamics, exhaustive fixed-point enumeration, symmetry structure, and the
// bundled reference experiments.

#include "circmem/capacity.hpp"
#include "circmem/core.hpp"
#include "circmem/dynamics.hpp"
#include "circmem/enumerate.hpp"
#include "circmem/errors.hpp"
#include "circmem/io.hpp"
#include "circmem/prng.hpp"
#include "circmem/search.hpp"
#include "circmem/symmetry.hpp"
