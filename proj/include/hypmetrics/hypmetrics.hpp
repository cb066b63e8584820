#pragma once

#include "hypmetrics/analysis/affine.hpp"
#include "hypmetrics/analysis/checks.hpp"
#include "hypmetrics/analysis/constants.hpp"
#include "hypmetrics/analysis/distortion.hpp"
#include "hypmetrics/analysis/fixtures.hpp"
#include "hypmetrics/analysis/report.hpp"
#include "hypmetrics/domain.hpp"
#include "hypmetrics/enclosing_ball.hpp"
#include "hypmetrics/error.hpp"
#include "hypmetrics/golden.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/mobius.hpp"
#include "hypmetrics/oval.hpp"
#include "hypmetrics/point.hpp"
#include "hypmetrics/sampling.hpp"
