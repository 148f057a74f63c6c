#pragma once

#include "hypick/classify.hpp"
#include "hypick/duality.hpp"
#include "hypick/embedding.hpp"
#include "hypick/gram.hpp"
#include "hypick/hyperbolic.hpp"
#include "hypick/invariants.hpp"
#include "hypick/json_io.hpp"
#include "hypick/multalg.hpp"
#include "hypick/trees.hpp"
#include "hypick/types.hpp"
