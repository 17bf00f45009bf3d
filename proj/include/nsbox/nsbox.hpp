#pragma once

#include "nsbox/box_state.hpp"
#include "nsbox/catalog.hpp"
#include "nsbox/coupler.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/io.hpp"
#include "nsbox/linalg.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"
#include "nsbox/triviality.hpp"
#include "nsbox/wiring.hpp"
