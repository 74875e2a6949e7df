#pragma once

#include "btg/bnormal.hpp"
#include "btg/bspace.hpp"
#include "btg/coarse.hpp"
#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/random.hpp"
#include "btg/smoother.hpp"
#include "btg/twogrid.hpp"
#include "btg/types.hpp"
