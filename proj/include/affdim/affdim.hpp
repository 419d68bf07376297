#pragma once

// Umbrella header for the whole toolkit.

#include "affdim/carpets.hpp"
#include "affdim/conditions.hpp"
#include "affdim/covers.hpp"
#include "affdim/dimension.hpp"
#include "affdim/errors.hpp"
#include "affdim/estimators.hpp"
#include "affdim/ifs.hpp"
#include "affdim/io.hpp"
#include "affdim/linalg.hpp"
#include "affdim/render.hpp"
#include "affdim/rng.hpp"
