#pragma once

#include <vector>

#include "isoclus/geom.hpp"

namespace isoclus {

/// Sutherland-Hodgman step keeping {x : dot(x, n) <= c}.
std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& poly, Point2 n, double c);
/// Clips `subject` by a counter-clockwise convex polygon.
std::vector<Point2> clip_polygon_convex(std::vector<Point2> subject, const std::vector<Point2>& clip);
double polygon_signed_area(const std::vector<Point2>& v);
/// Replaces arcs by inscribed polylines with at most `max_angle` per chord.
Region polygonize(const Region& r, double max_angle);

}  // namespace isoclus
