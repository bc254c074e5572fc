#pragma once

// Minimal SVG writer for design/deformation frames.

#include "morphtop/geom.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace mtop {

class SvgWriter {
public:
    void polygon(const std::vector<Vec2>& pts, const std::string& fill,
                 const std::string& stroke, double stroke_width = 0.02,
                 double opacity = 1.0);
    void polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                  double stroke_width = 0.05, bool dashed = false);
    void circle(const Vec2& center, double radius, const std::string& fill,
                const std::string& stroke, double stroke_width = 0.02);
    void marker(const Vec2& center, double radius, const std::string& stroke);

    /// Y axis flipped so larger y draws upward.
    std::string finish(double margin = 1.0) const;

private:
    void grow(const Vec2& p);

    std::ostringstream body_;
    bool any_ = false;
    Vec2 lo_ = Vec2::Zero();
    Vec2 hi_ = Vec2::Zero();
};

}  // namespace mtop
