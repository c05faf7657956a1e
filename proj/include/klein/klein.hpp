#ifndef KLEIN_KLEIN_HPP
#define KLEIN_KLEIN_HPP

#include "gaussian_rational.hpp"
#include "geometry.hpp"
#include "group.hpp"
#include "interpolation.hpp"
#include "klein_config.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "projection.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "subconfigs.hpp"

#endif  // KLEIN_KLEIN_HPP
