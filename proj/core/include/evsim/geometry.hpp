#pragma once

#include <cmath>
#include <string>

namespace evsim {

// Planar coordinates in miles.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Axis-aligned rectangular zone; trip endpoints are drawn uniformly inside it.
struct Zone {
    std::string id;
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;
};

inline double manhattan_distance(const Point& a, const Point& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Extra miles driven to visit `station` on the way from `from` to `dest`.
// Nonnegative under the rectilinear metric.
inline double detour_distance(const Point& from, const Point& dest, const Point& station) {
    return manhattan_distance(from, station) + manhattan_distance(station, dest) -
           manhattan_distance(from, dest);
}

}  // namespace evsim
