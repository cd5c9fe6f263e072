#pragma once

// Serialization: shortest round-trip decimal floats, CSV writers for every
// exportable structure, and 16-bit PGM heatmaps with a sidecar description.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "slitwave/fields.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/nullmap.hpp"
#include "slitwave/types.hpp"

namespace slitwave {

// Shortest decimal that round-trips to the same double (<= 17 significant
// digits by construction).
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void write_nullmap_csv(std::ostream& os, const NullMap& map) {
  os << "x2,zpp,rho\n";
  for (const NullPoint& p : map.points)
    os << format_double(p.x2) << ',' << format_double(p.zpp) << ','
       << format_double(p.rho) << '\n';
}

inline void write_grid_csv(std::ostream& os, const ScalarFieldGrid& g) {
  os << "x2,zpp,value\n";
  for (std::size_t j = 0; j < g.nz; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      os << format_double(g.x2_at(i)) << ',' << format_double(g.zpp_at(j))
         << ',' << format_double(g.at(i, j)) << '\n';
}

inline void write_slice_csv(std::ostream& os,
                            const std::vector<SliceSample>& samples) {
  os << "coord,rho\n";
  for (const SliceSample& s : samples)
    os << format_double(s.coord) << ',' << format_double(s.rho) << '\n';
}

inline void write_cornu_csv(std::ostream& os,
                            const std::vector<CornuPoint>& pts) {
  os << "u,S,C\n";
  for (const CornuPoint& p : pts)
    os << format_double(p.u) << ',' << format_double(p.s) << ','
       << format_double(p.c) << '\n';
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open output file: " + path);
  return os;
}

// P2 (ASCII) PGM, 16-bit, row 0 = zpp_min.  The value mapping (affine or
// log10) plus the data range goes to a sidecar file "<path>.meta".
inline void write_pgm(const ScalarFieldGrid& g, const std::string& path,
                      bool log_mapping) {
  double vmin = g.values.empty() ? 0.0 : g.values[0];
  double vmax = vmin;
  double min_pos = 0.0;
  for (double v : g.values) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    if (v > 0.0 && (min_pos == 0.0 || v < min_pos)) min_pos = v;
  }
  if (log_mapping && min_pos == 0.0)
    throw config_error("write_pgm: log mapping needs positive values");

  std::ofstream os = open_output(path);
  os << "P2\n" << g.nx << ' ' << g.nz << "\n65535\n";
  const double lmin = log_mapping ? std::log10(min_pos) : 0.0;
  const double lmax = log_mapping ? std::log10(vmax) : 0.0;
  for (std::size_t j = 0; j < g.nz; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double v = g.at(i, j);
      double t;
      if (log_mapping) {
        const double lv = std::log10(std::max(v, min_pos));
        t = lmax > lmin ? (lv - lmin) / (lmax - lmin) : 0.0;
      } else {
        t = vmax > vmin ? (v - vmin) / (vmax - vmin) : 0.0;
      }
      const int pix = static_cast<int>(std::lround(t * 65535.0));
      os << pix << (i + 1 < g.nx ? ' ' : '\n');
    }
  }
  if (!os) throw io_error("failed writing PGM: " + path);

  std::ofstream meta = open_output(path + ".meta");
  meta << "mapping=" << (log_mapping ? "log10" : "affine") << '\n'
       << "min=" << format_double(vmin) << '\n'
       << "max=" << format_double(vmax) << '\n'
       << "nx=" << g.nx << '\n'
       << "nz=" << g.nz << '\n'
       << "x2_min=" << format_double(g.region.x2_min) << '\n'
       << "x2_max=" << format_double(g.region.x2_max) << '\n'
       << "zpp_min=" << format_double(g.region.zpp_min) << '\n'
       << "zpp_max=" << format_double(g.region.zpp_max) << '\n'
       << "log_z=" << (g.log_z ? "true" : "false") << '\n';
  if (!meta) throw io_error("failed writing PGM sidecar: " + path + ".meta");
}

}  // namespace slitwave
