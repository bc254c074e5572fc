#pragma once

// File formats: design vectors, curve point lists, CSV logs, atomic writes.

#include "morphtop/design.hpp"
#include "morphtop/fsd.hpp"
#include "morphtop/optimizer.hpp"

#include <string>
#include <vector>

namespace mtop {

/// One line per mask `x y r s f`, final line `F <force>`; 17 significant
/// digits, so decimal round-trips are bit-exact.
std::string format_design(const DesignVector& design);
DesignVector parse_design(const std::string& text);
DesignVector read_design_file(const std::string& path);

/// Two-column decimal point list, mm.
std::string format_curve(const std::vector<Vec2>& points);
std::vector<Vec2> parse_curve(const std::string& text);
std::vector<Vec2> read_curve_file(const std::string& path);

std::string format_material_field(const MaterialField& field);

std::string csv_header();
std::string csv_row(const IterationRecord& rec);

/// Write-then-rename so readers never observe partial files.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace mtop
