#pragma once

#include <string>
#include <vector>

#include "salmetrics/grid.hpp"

namespace salmetrics {

struct Point {
    int x = 0;
    int y = 0;
};

struct Observer {
    std::string id;
    std::vector<Point> points;
};

// Every fixation recorded for one image, grouped by observer. Coordinates are
// 0-indexed pixels; bounds are checked against image dims at rasterization
// time, not here, because the set itself carries no dims.
struct FixationSet {
    std::string image_id;
    std::vector<Observer> observers;

    int total_fixations() const;
    std::vector<Point> all_points() const;
};

// Eye-tracking setup geometry. pixels_per_degree is the number of image
// pixels subtended by one degree of visual angle and sets the blur width used
// to turn discrete fixations into a density.
struct ViewingGeometry {
    double pixels_per_degree = 35.0;
};

// 0/1 raster of fixation locations. Multiple fixations landing on the same
// pixel collapse to a single 1; n_fixations counts 1-pixels.
struct BinaryFixationMap {
    Grid grid;
    int n_fixations = 0;
};

}  // namespace salmetrics
