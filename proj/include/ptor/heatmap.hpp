#pragma once

#include <string>

#include "ptor/grid.hpp"

namespace ptor {

/// Writes the field as CSV rows (x¹, x², value) and an 8-bit grayscale PPM
/// (min–max normalized; constant fields map to mid-gray).
void emit_heatmap(const ScalarField& f, const std::string& csv_path,
                  const std::string& ppm_path);

}  // namespace ptor
