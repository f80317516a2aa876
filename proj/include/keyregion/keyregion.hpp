#pragma once

// Umbrella header.

#include "keyregion/channel.hpp"
#include "keyregion/check.hpp"
#include "keyregion/closed_form.hpp"
#include "keyregion/csv.hpp"
#include "keyregion/designs.hpp"
#include "keyregion/json_io.hpp"
#include "keyregion/prob.hpp"
#include "keyregion/regions.hpp"
#include "keyregion/rng.hpp"
#include "keyregion/sim.hpp"
#include "keyregion/version.hpp"
