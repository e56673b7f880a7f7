#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace sprouts::geo {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return a * s; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }

// Exact sign of the orientation of (a, b, c): +1 counterclockwise, -1
// clockwise, 0 collinear. Floating-point filter with a rational fallback.
int orient(Point a, Point b, Point c);

// Exact sign of the incircle determinant: +1 when d lies inside the circle
// through the counterclockwise triangle (a, b, c).
int incircle(Point a, Point b, Point c, Point d);

// Closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(Point a, Point b, Point c, Point d);

// p lies on the closed segment [a,b].
bool on_segment(Point p, Point a, Point b);

Point closest_on_segment(Point p, Point a, Point b);
double point_segment_distance(Point p, Point a, Point b);
double segment_distance(Point a, Point b, Point c, Point d);

double signed_area(std::span<const Point> polygon);

enum class Containment { Outside, Inside, OnBoundary };

// Exact crossing-number test; repeated vertices and doubled edges are fine.
Containment point_in_polygon(Point p, std::span<const Point> polygon);

// Angular order of the rays c->p and c->q, counterclockwise from the positive
// x axis. Exact.
bool angle_less(Point c, Point p, Point q);
bool same_direction(Point c, Point p, Point q);

// The ray c->d lies strictly inside the counterclockwise sweep from ray c->a
// to ray c->b. When a and b point the same way the sweep is the full turn.
bool in_ccw_sweep(Point c, Point a, Point b, Point d);

}
