#pragma once

// Umbrella header for the qsteer toolkit: steerability of two-qubit states
// decided through entanglement detection of constructed witness states,
// analytic steerability boundaries, a geometric Bell-like steering test,
// and a simulated tomography pipeline with Poissonian counting noise.

#include "qsteer/errors.hpp"
#include "qsteer/linalg.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/measures.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/states.hpp"
#include "qsteer/steering.hpp"
#include "qsteer/tomo.hpp"
#include "qsteer/version.hpp"
