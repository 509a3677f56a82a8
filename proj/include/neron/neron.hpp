#pragma once

// Umbrella header for the library (the CLI layer is in neron/cli.hpp).

#include "neron/desingularize.hpp"
#include "neron/fraction.hpp"
#include "neron/ideal_ops.hpp"
#include "neron/local_ring.hpp"
#include "neron/matrix.hpp"
#include "neron/monomial.hpp"
#include "neron/mora.hpp"
#include "neron/newton.hpp"
#include "neron/order.hpp"
#include "neron/polynomial.hpp"
#include "neron/presentation.hpp"
#include "neron/problem.hpp"
#include "neron/rational.hpp"
#include "neron/render.hpp"
#include "neron/taylor.hpp"
#include "neron/truncated.hpp"
#include "neron/variables.hpp"
