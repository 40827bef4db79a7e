#pragma once

// Umbrella header: exact counting, series tables, and bulk estimation for
// dimer and monomer-dimer systems on finite boxes.

#include "dimerlab/errors.hpp"
#include "dimerlab/estimator.hpp"
#include "dimerlab/exact.hpp"
#include "dimerlab/expansions.hpp"
#include "dimerlab/lattice.hpp"
#include "dimerlab/matching.hpp"
#include "dimerlab/polynomial.hpp"
