#pragma once

#include "mdlclust/baseclust.hpp"
#include "mdlclust/bench.hpp"
#include "mdlclust/consensus.hpp"
#include "mdlclust/dataio.hpp"
#include "mdlclust/gamo.hpp"
#include "mdlclust/objectives.hpp"
#include "mdlclust/types.hpp"
#include "mdlclust/validation.hpp"
