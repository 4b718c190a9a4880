#pragma once

#include "acm/angle_codec.hpp"
#include "acm/average_precision.hpp"
#include "acm/dota.hpp"
#include "acm/dual.hpp"
#include "acm/errors.hpp"
#include "acm/fit.hpp"
#include "acm/gaussian.hpp"
#include "acm/geometry.hpp"
#include "acm/losses.hpp"
#include "acm/mlp.hpp"
#include "acm/polygon.hpp"
#include "acm/rotated_iou.hpp"
#include "acm/vec2.hpp"
#include "acm/version.hpp"
