#pragma once

#include "statsurf/errors.hpp"
#include "statsurf/geometry.hpp"
#include "statsurf/sampling.hpp"
#include "statsurf/bump.hpp"
#include "statsurf/quartic1d.hpp"
#include "statsurf/quartic2d.hpp"
#include "statsurf/trig1d.hpp"
#include "statsurf/trig2d.hpp"
#include "statsurf/superposition.hpp"
#include "statsurf/verification.hpp"
