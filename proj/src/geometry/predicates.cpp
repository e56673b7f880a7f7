#include "sprouts/geometry/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

namespace sprouts::geo {

namespace {

using Int = boost::multiprecision::cpp_int;

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;

// Exact integer images of doubles scaled by a common power of two.
template <std::size_t N>
std::array<Int, N> scaled(const std::array<double, N>& v) {
  int low = std::numeric_limits<int>::max();
  for (double x : v)
    if (x != 0) {
      int e = 0;
      std::frexp(x, &e);
      low = std::min(low, e - 53);
    }
  std::array<Int, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    if (v[i] == 0) continue;
    int e = 0;
    double m = std::frexp(v[i], &e);
    out[i] = Int(static_cast<long long>(std::ldexp(m, 53))) << (e - 53 - low);
  }
  return out;
}

int sign_of(const Int& r) { return r.sign(); }

int orient_exact(Point a, Point b, Point c) {
  auto s = scaled<6>({a.x, a.y, b.x, b.y, c.x, c.y});
  return sign_of((s[2] - s[0]) * (s[5] - s[1]) - (s[3] - s[1]) * (s[4] - s[0]));
}

int incircle_exact(Point a, Point b, Point c, Point d) {
  auto s = scaled<8>({a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y});
  Int adx = s[0] - s[6], ady = s[1] - s[7];
  Int bdx = s[2] - s[6], bdy = s[3] - s[7];
  Int cdx = s[4] - s[6], cdy = s[5] - s[7];
  Int alift = adx * adx + ady * ady;
  Int blift = bdx * bdx + bdy * bdy;
  Int clift = cdx * cdx + cdy * cdy;
  return sign_of(Int(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady)));
}

bool upper_half(Point c, Point p) { return p.y > c.y || (p.y == c.y && p.x > c.x); }

}

int orient(Point a, Point b, Point c) {
  double left = (b.x - a.x) * (c.y - a.y);
  double right = (b.y - a.y) * (c.x - a.x);
  double det = left - right;
  double bound = (3.0 + 16.0 * kEps) * kEps * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient_exact(a, b, c);
}

int incircle(Point a, Point b, Point c, Point d) {
  double adx = a.x - d.x, ady = a.y - d.y;
  double bdx = b.x - d.x, bdy = b.y - d.y;
  double cdx = c.x - d.x, cdy = c.y - d.y;
  double alift = adx * adx + ady * ady;
  double blift = bdx * bdx + bdy * bdy;
  double clift = cdx * cdx + cdy * cdy;
  double det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady);
  double permanent = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                     blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                     clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
  double bound = (10.0 + 96.0 * kEps) * kEps * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

bool on_segment(Point p, Point a, Point b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return o1 * o2 < 0 && o3 * o4 < 0;
}

Point closest_on_segment(Point p, Point a, Point b) {
  Point ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0) return a;
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

double point_segment_distance(Point p, Point a, Point b) { return dist(p, closest_on_segment(p, a, b)); }

double segment_distance(Point a, Point b, Point c, Point d) {
  if (segments_intersect(a, b, c, d)) return 0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                   point_segment_distance(d, a, b)});
}

double signed_area(std::span<const Point> polygon) {
  double twice = 0;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) twice += cross(polygon[i], polygon[(i + 1) % n]);
  return twice / 2;
}

Containment point_in_polygon(Point p, std::span<const Point> polygon) {
  bool inside = false;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    Point a = polygon[i], b = polygon[(i + 1) % n];
    if (on_segment(p, a, b)) return Containment::OnBoundary;
    if (a.y <= p.y && p.y < b.y && orient(a, b, p) > 0) inside = !inside;
    else if (b.y <= p.y && p.y < a.y && orient(a, b, p) < 0) inside = !inside;
  }
  return inside ? Containment::Inside : Containment::Outside;
}

bool angle_less(Point c, Point p, Point q) {
  bool hp = upper_half(c, p), hq = upper_half(c, q);
  if (hp != hq) return hp;
  return orient(c, p, q) > 0;
}

bool same_direction(Point c, Point p, Point q) {
  return orient(c, p, q) == 0 && upper_half(c, p) == upper_half(c, q);
}

bool in_ccw_sweep(Point c, Point a, Point b, Point d) {
  if (same_direction(c, a, d)) return false;
  if (same_direction(c, a, b)) return true;
  // Angles measured counterclockwise from a: d must come before b.
  auto after_a = [&](Point x) { return !angle_less(c, x, a); };
  bool da = after_a(d), ba = after_a(b);
  if (da != ba) return da;
  return angle_less(c, d, b);
}

}
