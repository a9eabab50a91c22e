#pragma once

#include "complex.hpp"
#include "dirichlet.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "io.hpp"
#include "operators.hpp"
#include "positivity.hpp"
#include "quadgraph.hpp"
#include "random.hpp"
#include "spectral.hpp"
#include "svg.hpp"
#include "weights.hpp"
