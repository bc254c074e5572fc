#include "morphtop/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtop {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_design(const DesignVector& design) {
    std::ostringstream os;
    for (const Mask& m : design.masks) {
        os << fmt17(m.x) << ' ' << fmt17(m.y) << ' ' << fmt17(m.r) << ' ' << m.s << ' '
           << fmt17(m.f) << '\n';
    }
    os << "F " << fmt17(design.force) << '\n';
    return os.str();
}

DesignVector parse_design(const std::string& text) {
    DesignVector d;
    std::istringstream is(text);
    std::string line;
    bool have_force = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "F") {
            if (!(ls >> d.force)) throw std::runtime_error("design file: bad force line");
            have_force = true;
            continue;
        }
        Mask m;
        std::istringstream ms(line);
        if (!(ms >> m.x >> m.y >> m.r >> m.s >> m.f)) {
            throw std::runtime_error("design file: bad mask line '" + line + "'");
        }
        d.masks.push_back(m);
    }
    if (!have_force) throw std::runtime_error("design file: missing final force line");
    return d;
}

DesignVector read_design_file(const std::string& path) {
    return parse_design(read_text_file(path));
}

std::string format_curve(const std::vector<Vec2>& points) {
    std::ostringstream os;
    for (const Vec2& p : points) {
        os << fmt17(p.x()) << ' ' << fmt17(p.y()) << '\n';
    }
    return os.str();
}

std::vector<Vec2> parse_curve(const std::string& text) {
    std::vector<Vec2> pts;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x >> y)) throw std::runtime_error("curve file: bad line '" + line + "'");
        pts.emplace_back(x, y);
    }
    return pts;
}

std::vector<Vec2> read_curve_file(const std::string& path) {
    return parse_curve(read_text_file(path));
}

std::string format_material_field(const MaterialField& field) {
    std::ostringstream os;
    for (std::size_t e = 0; e < field.rho.size(); ++e) {
        os << e << ' ' << static_cast<int>(field.rho[e]) << '\n';
    }
    return os.str();
}

std::string csv_header() {
    return "iter,f_incumbent,f_candidate,accepted,volume_fraction,newton_iters,"
           "contact_pairs_active\n";
}

std::string csv_row(const IterationRecord& rec) {
    std::ostringstream os;
    os << rec.iter << ',' << fmt17(rec.f_incumbent) << ',' << fmt17(rec.f_candidate) << ','
       << (rec.accepted ? 1 : 0) << ',' << fmt17(rec.volume) << ',' << rec.newton_iterations
       << ',' << rec.contact_pairs << '\n';
    return os.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace mtop
