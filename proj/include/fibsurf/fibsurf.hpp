#pragma once

#include "fibsurf/error.hpp"
#include "fibsurf/integer.hpp"
#include "fibsurf/lattice.hpp"
#include "fibsurf/fibration.hpp"
#include "fibsurf/reduction.hpp"
#include "fibsurf/pencil.hpp"
#include "fibsurf/generator.hpp"
#include "fibsurf/model_io.hpp"
#include "fibsurf/report_io.hpp"
