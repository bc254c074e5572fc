#include "morphtop/svg.hpp"

#include <cstdio>

namespace mtop {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void SvgWriter::grow(const Vec2& p) {
    if (!any_) {
        lo_ = hi_ = p;
        any_ = true;
        return;
    }
    lo_ = lo_.cwiseMin(p);
    hi_ = hi_.cwiseMax(p);
}

void SvgWriter::polygon(const std::vector<Vec2>& pts, const std::string& fill,
                        const std::string& stroke, double stroke_width, double opacity) {
    body_ << "<polygon points=\"";
    for (const Vec2& p : pts) {
        body_ << num(p.x()) << ',' << num(p.y()) << ' ';
        grow(p);
    }
    body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
          << num(stroke_width) << "\" opacity=\"" << num(opacity) << "\"/>\n";
}

void SvgWriter::polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                         double stroke_width, bool dashed) {
    body_ << "<polyline points=\"";
    for (const Vec2& p : pts) {
        body_ << num(p.x()) << ',' << num(p.y()) << ' ';
        grow(p);
    }
    body_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width)
          << "\"";
    if (dashed) body_ << " stroke-dasharray=\"0.3,0.2\"";
    body_ << "/>\n";
}

void SvgWriter::circle(const Vec2& center, double radius, const std::string& fill,
                       const std::string& stroke, double stroke_width) {
    body_ << "<circle cx=\"" << num(center.x()) << "\" cy=\"" << num(center.y()) << "\" r=\""
          << num(radius) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
          << "\" stroke-width=\"" << num(stroke_width) << "\"/>\n";
    grow(center + Vec2(radius, radius));
    grow(center - Vec2(radius, radius));
}

void SvgWriter::marker(const Vec2& center, double radius, const std::string& stroke) {
    body_ << "<circle cx=\"" << num(center.x()) << "\" cy=\"" << num(center.y()) << "\" r=\""
          << num(radius) << "\" fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"" << num(0.4 * radius) << "\" stroke-dasharray=\"0.2,0.1\"/>\n";
    grow(center + Vec2(radius, radius));
    grow(center - Vec2(radius, radius));
}

std::string SvgWriter::finish(double margin) const {
    const Vec2 lo = lo_ - Vec2(margin, margin);
    const Vec2 hi = hi_ + Vec2(margin, margin);
    const double w = hi.x() - lo.x();
    const double h = hi.y() - lo.y();
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo.x()) << ' '
       << num(-hi.y()) << ' ' << num(w) << ' ' << num(h) << "\" width=\"" << num(100.0 * w)
       << "\" height=\"" << num(100.0 * h) << "\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    os << body_.str();
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace mtop
