#pragma once

#include "permuto/bigint.hpp"
#include "permuto/bigraph.hpp"
#include "permuto/decomp.hpp"
#include "permuto/errors.hpp"
#include "permuto/json_io.hpp"
#include "permuto/lattice.hpp"
#include "permuto/render.hpp"
#include "permuto/subdivision.hpp"
