#pragma once

// Umbrella header for the through-wall FMCW radar toolkit.

#include "twr/antenna.hpp"
#include "twr/chirp.hpp"
#include "twr/constants.hpp"
#include "twr/pipeline.hpp"
#include "twr/ranging.hpp"
#include "twr/reference_tables.hpp"
#include "twr/scene.hpp"
#include "twr/scene_config.hpp"
#include "twr/spectro.hpp"
#include "twr/synth.hpp"
#include "twr/validate.hpp"
