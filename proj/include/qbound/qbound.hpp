#pragma once

// Umbrella header for the qbound library.

#include "qbound/catalog.hpp"
#include "qbound/complex_matrix.hpp"
#include "qbound/constraints.hpp"
#include "qbound/density_state.hpp"
#include "qbound/eig.hpp"
#include "qbound/errors.hpp"
#include "qbound/geometry.hpp"
#include "qbound/gram_schmidt.hpp"
#include "qbound/measures.hpp"
#include "qbound/mub.hpp"
#include "qbound/named_sets.hpp"
#include "qbound/operators.hpp"
#include "qbound/optimizer.hpp"
#include "qbound/random_states.hpp"
#include "qbound/rng.hpp"
#include "qbound/serialization.hpp"
#include "qbound/states.hpp"
