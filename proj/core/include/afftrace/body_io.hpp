#pragma once

#include <string>

#include "afftrace/star_body.hpp"

namespace afftrace {

// Flat JSON record: dimension, symmetry flag, grid directions, radial values.
// A body loaded from JSON evaluates its radial function by interpolation over
// the stored grid (periodic cubic on S^1, nearest direction for m >= 3), so
// files should carry reasonably dense grids.
std::string body_to_json(const StarBody& body);
StarBody body_from_json(const std::string& text);

void save_body(const StarBody& body, const std::string& path);
StarBody load_body(const std::string& path);

}  // namespace afftrace
