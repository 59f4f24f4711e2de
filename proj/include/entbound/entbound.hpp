#pragma once

#include "entbound/bounds.hpp"
#include "entbound/cli.hpp"
#include "entbound/gf2.hpp"
#include "entbound/graph.hpp"
#include "entbound/optimize.hpp"
#include "entbound/state.hpp"
