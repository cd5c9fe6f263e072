#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slitwave {

using Complex = std::complex<double>;

// Thrown when a configuration or argument is structurally invalid
// (bad edge ordering, non-positive distances, malformed regions, ...).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an input is outside the stable numeric domain of an algorithm.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative scheme fails to converge or produces
// non-finite intermediates.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown on file-system failures (unwritable output, missing input).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All distances are expressed in units of the de Broglie wavelength,
// i.e. lambda = 1 throughout.
struct WaveParams {
  double lambda = 1.0;
};

// An aperture made of one or more slits in the x1 plane, described by the
// sorted edge list e1 < e2 < ... < e_{2n}; slit k spans [e_{2k-1}, e_{2k}].
class SlitArray {
 public:
  explicit SlitArray(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.empty() || edges_.size() % 2 != 0)
      throw config_error("SlitArray: even, nonempty edge list required");
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (!(edges_[i - 1] < edges_[i]))
        throw config_error("SlitArray: edges must be strictly increasing");
  }

  static SlitArray single(double center, double width) {
    return SlitArray({center - width / 2, center + width / 2});
  }

  // n slits of the given width with centers spaced `pitch` apart,
  // centered as a group on x1 = 0.
  static SlitArray equal_pitch(std::size_t n, double width, double pitch) {
    if (n == 0) throw config_error("SlitArray: slit count must be positive");
    std::vector<double> e;
    e.reserve(2 * n);
    const double first = -0.5 * pitch * static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double c = first + pitch * static_cast<double>(k);
      e.push_back(c - width / 2);
      e.push_back(c + width / 2);
    }
    return SlitArray(std::move(e));
  }

  const std::vector<double>& edges() const { return edges_; }
  std::size_t slit_count() const { return edges_.size() / 2; }
  double lower_edge(std::size_t k) const { return edges_.at(2 * k); }
  double upper_edge(std::size_t k) const { return edges_.at(2 * k + 1); }
  double center(std::size_t k) const {
    return 0.5 * (lower_edge(k) + upper_edge(k));
  }
  double width(std::size_t k) const { return upper_edge(k) - lower_edge(k); }

  // Spacing between adjacent slit centers, averaged; the slit width for a
  // single slit.  Used as the characteristic transverse scale.
  double characteristic_spacing() const {
    if (slit_count() < 2) return width(0);
    return (center(slit_count() - 1) - center(0)) /
           static_cast<double>(slit_count() - 1);
  }

  bool operator==(const SlitArray&) const = default;

 private:
  std::vector<double> edges_;
};

// A point in the detection plane: transverse coordinate x2 at propagation
// distance zpp > 0 behind the aperture.
struct ObservationPoint {
  double x2 = 0.0;
  double zpp = 0.0;

  ObservationPoint(double x2_, double zpp_) : x2(x2_), zpp(zpp_) {
    if (!(zpp > 0.0))
      throw config_error("ObservationPoint: zpp must be positive");
  }

  bool operator==(const ObservationPoint&) const = default;
};

// Illumination: either an incoming plane wave (far-field source) or a point
// source at transverse position x0 a distance zp in front of the aperture.
struct SourceConfig {
  enum class Kind { FarField, Finite };

  Kind kind = Kind::FarField;
  double x0 = 0.0;
  double zp = 0.0;

  static SourceConfig far_field() { return {}; }

  static SourceConfig finite(double x0, double zp) {
    if (!(zp > 0.0)) throw config_error("SourceConfig: zp must be positive");
    SourceConfig s;
    s.kind = Kind::Finite;
    s.x0 = x0;
    s.zp = zp;
    return s;
  }

  bool operator==(const SourceConfig&) const = default;
};

// A rectangular window of the detection half-plane.
struct Region {
  double x2_min = 0.0;
  double x2_max = 0.0;
  double zpp_min = 0.0;
  double zpp_max = 0.0;

  Region(double x2_min_, double x2_max_, double zpp_min_, double zpp_max_)
      : x2_min(x2_min_), x2_max(x2_max_), zpp_min(zpp_min_), zpp_max(zpp_max_) {
    if (!(x2_min < x2_max))
      throw config_error("Region: x2_min must be less than x2_max");
    if (!(zpp_min > 0.0) || !(zpp_min < zpp_max))
      throw config_error("Region: need 0 < zpp_min < zpp_max");
  }

  bool contains(double x2, double zpp) const {
    return x2 >= x2_min && x2 <= x2_max && zpp >= zpp_min && zpp <= zpp_max;
  }

  bool operator==(const Region&) const = default;
};

}  // namespace slitwave
