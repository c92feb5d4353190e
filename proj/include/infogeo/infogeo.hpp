#pragma once

// Numerical information geometry: parametric density families (real and
// complex-shifted Gaussians), entropies and Kullback-Leibler divergences,
// Fisher information metrics by analytic, quadrature and Monte Carlo
// backends, and signature/interval analysis of the resulting tensors.

#include "infogeo/density.hpp"
#include "infogeo/divergence.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/fisher.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/json_io.hpp"
#include "infogeo/points.hpp"
#include "infogeo/quadrature.hpp"
#include "infogeo/rng.hpp"
