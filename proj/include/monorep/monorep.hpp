#pragma once

#include "monorep/common.hpp"
#include "monorep/conjugate.hpp"
#include "monorep/duality.hpp"
#include "monorep/grid.hpp"
#include "monorep/json_io.hpp"
#include "monorep/max_affine.hpp"
#include "monorep/operators.hpp"
#include "monorep/representations.hpp"
#include "monorep/simplex_lp.hpp"
#include "monorep/witness.hpp"
