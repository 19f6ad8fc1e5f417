#pragma once

// Umbrella header: finite fields and polynomials, Laurent/Tate series,
// p-adic exponents and Mahler machinery, interpolation bases, measures,
// Dirichlet series with their special values, and the finite-place theory.

#include "fq.hpp"
#include "fqpoly.hpp"
#include "subgroup.hpp"
#include "laurent.hpp"
#include "tate.hpp"
#include "padic_exponent.hpp"
#include "padic.hpp"
#include "newton_basis.hpp"
#include "measure.hpp"
#include "lseries.hpp"
#include "vadic.hpp"
