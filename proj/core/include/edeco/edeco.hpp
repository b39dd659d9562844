#pragma once

#include "edeco/constants.hpp"
#include "edeco/decoherence/engine.hpp"
#include "edeco/error.hpp"
#include "edeco/interferometry/common.hpp"
#include "edeco/interferometry/ghz.hpp"
#include "edeco/interferometry/michelson.hpp"
#include "edeco/interferometry/ramsey.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"
#include "edeco/quantum/space.hpp"
#include "edeco/quantum/types.hpp"
#include "edeco/sensitivity/bounds.hpp"
#include "edeco/sensitivity/design.hpp"
