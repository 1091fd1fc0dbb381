#pragma once

#include "tfd/common.hpp"
#include "tfd/grid.hpp"
#include "tfd/io.hpp"
#include "tfd/siggen.hpp"
#include "tfd/metrics.hpp"
#include "tfd/wvd.hpp"
#include "tfd/kernels.hpp"
#include "tfd/cctfd.hpp"
#include "tfd/lsaf.hpp"
#include "tfd/harness.hpp"
