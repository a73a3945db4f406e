#pragma once

#include "sftdim/adjacency.hpp"
#include "sftdim/ambient.hpp"
#include "sftdim/cylinder.hpp"
#include "sftdim/dimension_groups.hpp"
#include "sftdim/duality.hpp"
#include "sftdim/errors.hpp"
#include "sftdim/integer.hpp"
#include "sftdim/lattices.hpp"
#include "sftdim/linalg.hpp"
#include "sftdim/matrix.hpp"
#include "sftdim/minpoly.hpp"
#include "sftdim/perron.hpp"
#include "sftdim/polynomial.hpp"
#include "sftdim/shift_equivalence.hpp"
#include "sftdim/traces.hpp"
