#pragma once

#include "holant/brute_force.hpp"
#include "holant/classes.hpp"
#include "holant/dichotomy.hpp"
#include "holant/evaluators.hpp"
#include "holant/fkt.hpp"
#include "holant/grid.hpp"
#include "holant/holographic.hpp"
#include "holant/interpolation.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"
#include "holant/transform.hpp"
