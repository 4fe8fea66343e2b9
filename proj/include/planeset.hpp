#ifndef PLANESET_HPP
#define PLANESET_HPP

#include "planeset/curve_io.hpp"
#include "planeset/curves.hpp"
#include "planeset/error.hpp"
#include "planeset/exactly_m.hpp"
#include "planeset/geom.hpp"
#include "planeset/membership.hpp"
#include "planeset/packing_io.hpp"
#include "planeset/packings.hpp"
#include "planeset/rect_scan.hpp"
#include "planeset/scenario.hpp"
#include "planeset/spatial_index.hpp"
#include "planeset/svg.hpp"
#include "planeset/tangent_class.hpp"

#endif  // PLANESET_HPP
