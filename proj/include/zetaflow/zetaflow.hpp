#pragma once

#include "zetaflow/types.hpp"
#include "zetaflow/specfun.hpp"
#include "zetaflow/gfun.hpp"
#include "zetaflow/hermite.hpp"
#include "zetaflow/flow.hpp"
#include "zetaflow/scan.hpp"
#include "zetaflow/parallel.hpp"
#include "zetaflow/format.hpp"
