#include "ptor/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ptor/errors.hpp"

namespace ptor {

void emit_heatmap(const ScalarField& f, const std::string& csv_path,
                  const std::string& ppm_path) {
  require_finite(f.v.data(), f.v.size(), "emit_heatmap");
  const int n = f.grid.n;

  std::ofstream csv(csv_path);
  if (!csv) throw error("emit_heatmap: cannot open " + csv_path);
  csv << "x1,x2,value\n";
  char buf[96];
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid.x1(ix),
                    f.grid.x2(iy), f.at(ix, iy));
      csv << buf;
    }
  if (!csv) throw error("emit_heatmap: write failed for " + csv_path);

  const auto [mn_it, mx_it] = std::minmax_element(f.v.begin(), f.v.end());
  const double mn = *mn_it, mx = *mx_it;
  std::ofstream ppm(ppm_path, std::ios::binary);
  if (!ppm) throw error("emit_heatmap: cannot open " + ppm_path);
  ppm << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      double t = mx > mn ? (f.at(ix, iy) - mn) / (mx - mn) : 0.5;
      row[iy] = static_cast<unsigned char>(std::lround(255.0 * t));
    }
    ppm.write(reinterpret_cast<const char*>(row.data()), n);
  }
  if (!ppm) throw error("emit_heatmap: write failed for " + ppm_path);
}

}  // namespace ptor
