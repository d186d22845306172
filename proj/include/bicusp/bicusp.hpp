#pragma once

#include "bicusp/bicuspid.hpp"
#include "bicusp/complex_literal.hpp"
#include "bicusp/cuspgeom.hpp"
#include "bicusp/horoball.hpp"
#include "bicusp/interval.hpp"
#include "bicusp/json_io.hpp"
#include "bicusp/mat2.hpp"
#include "bicusp/search.hpp"
#include "bicusp/version.hpp"
#include "bicusp/words.hpp"
