#pragma once

#include "naecut/colouring.hpp"
#include "naecut/error.hpp"
#include "naecut/formula.hpp"
#include "naecut/generator.hpp"
#include "naecut/graph.hpp"
#include "naecut/nae_search.hpp"
#include "naecut/reduction.hpp"
#include "naecut/roundtrip.hpp"
#include "naecut/solvers.hpp"
#include "naecut/transform.hpp"
