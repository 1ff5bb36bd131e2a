#pragma once

// Umbrella header.

#include "freefit/dimer.hpp"
#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"
#include "freefit/hamiltonians.hpp"
#include "freefit/hilbert.hpp"
#include "freefit/idistance.hpp"
#include "freefit/kohnsham.hpp"
#include "freefit/optmodel.hpp"
#include "freefit/spectrum_io.hpp"
#include "freefit/sweep.hpp"
