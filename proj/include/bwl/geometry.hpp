#pragma once

// Sphere/simplex picture of the torus class: on the simplex sum alpha = n-1
// the Gram condition reduces (for n = 3 exactly, in general as its diagonal
// part) to one (n-2)-sphere, which three differently-centred spheres cut out
// equally well. For n = 3 the circle projects onto the ellipse
// bc = (b + c - 1)^2 in the bc-plane.

#include <algorithm>
#include <thread>
#include <vector>

#include "bwl/classify.hpp"
#include "bwl/orthogonal.hpp"

namespace bwl {

enum class SphereCenter { Origin, Ones, SimplexMid };

inline std::string_view to_string(SphereCenter c) {
  switch (c) {
    case SphereCenter::Origin: return "origin";
    case SphereCenter::Ones: return "ones";
    case SphereCenter::SimplexMid: return "simplex-mid";
  }
  return "origin";
}

struct SpherePredicate {
  int n = 3;
  SphereCenter center = SphereCenter::Origin;

  double center_coordinate() const {
    switch (center) {
      case SphereCenter::Origin: return 0.0;
      case SphereCenter::Ones: return 1.0;
      case SphereCenter::SimplexMid: return (n - 1.0) / n;
    }
    return 0.0;
  }
  double radius_squared() const {
    switch (center) {
      case SphereCenter::Origin: return n - 1.0;
      case SphereCenter::Ones: return 1.0;
      case SphereCenter::SimplexMid: return (n - 1.0) / n;
    }
    return 0.0;
  }
  /// sum_k (alpha_k - center)^2 - radius^2
  double residual(const AlphaVector& a) const {
    const double m = center_coordinate();
    double s = 0;
    for (double x : a.values()) s += (x - m) * (x - m);
    return s - radius_squared();
  }
};

inline constexpr SphereCenter kAllSphereCenters[] = {SphereCenter::Origin, SphereCenter::Ones,
                                                      SphereCenter::SimplexMid};

/// Membership of alpha on the boundary sphere; alpha must lie on the simplex.
inline bool on_boundary_sphere(const AlphaVector& a, SphereCenter center, double tol = 1e-9) {
  if (!a.on_simplex(tol))
    throw InvalidInput("on_boundary_sphere: alpha is off the simplex (sum = " + std::to_string(a.sum()) + ")");
  return std::abs(SpherePredicate{a.n(), center}.residual(a)) <= tol;
}

/// |bc - (b + c - 1)^2| <= tol
inline bool ellipse_check_n3(double b, double c, double tol = 1e-10) {
  if (b < 0 || c < 0) throw InvalidInput("ellipse_check_n3: b and c must be nonnegative");
  return std::abs(b * c - (b + c - 1.0) * (b + c - 1.0)) <= tol;
}

struct CirclePoint {
  double phi = 0;
  double a = 0, b = 0, c = 0;
};

/// `count` points of the n = 3 circle a+b+c = 2, a^2+b^2+c^2 = 2 at
/// phi_j = 2 pi j / count, built through the torus construction.
inline std::vector<CirclePoint> ellipse_points(int count) {
  if (count < 1) throw InvalidInput("ellipse_points: count must be positive");
  std::vector<CirclePoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double phi = kTwoPi * j / count;
    const AlphaVector a = witness_from_torus(3, {phi}, std::nullopt).alpha;
    pts.push_back({phi, a[0], a[1], a[2]});
  }
  return pts;
}

struct MarkedPoint {
  std::string label;
  double phi = 0;
  double a = 0, b = 0, c = 0;
};

/// I, II: Choi maps at (b, c) = (1, 0), (0, 1); III: reduction map at (1, 1).
inline std::vector<MarkedPoint> marked_points() {
  const double pi = std::numbers::pi;
  std::vector<MarkedPoint> out;
  for (auto [label, phi] : {std::pair{"I", 5.0 * pi / 3.0}, std::pair{"II", pi / 3.0}, std::pair{"III", pi}}) {
    const AlphaVector a = witness_from_torus(3, {phi}, std::nullopt).alpha;
    out.push_back({label, phi, a[0], a[1], a[2]});
  }
  return out;
}

// Torus scan --------------------------------------------------------------

struct ScanRow {
  int n = 0;
  std::vector<double> phases;
  int sign = 0;  // 0 for odd n
  AlphaVector alpha{0.0, 0.0};
  ComplexVector c;
  WitnessClass verdict = WitnessClass::Undetermined;
  std::optional<bool> decomposable;
  bool gram_ok = false;
  bool on_sphere = false;
};

struct ScanOptions {
  int n = 3;
  int grid = 8;
  std::optional<int> sign;  // even n: restrict to one class; both when absent
  int jobs = 1;
  ClassifyOptions classify{};
};

inline ScanRow scan_point(int n, const std::vector<double>& phases, std::optional<int> sign,
                          const ClassifyOptions& opt) {
  const WitnessRecord rec = witness_from_torus(n, phases, sign, opt.tol);
  ScanRow row;
  row.n = n;
  row.phases = phases;
  row.sign = sign.value_or(0);
  row.alpha = rec.alpha;
  row.c = alpha_to_c(rec.alpha).c;
  const PositivityVerdict v = classify(rec.alpha, opt);
  row.verdict = witness_class(v);
  row.decomposable = v.decomposable;
  row.gram_ok = gram_condition_circulant(rec.alpha, opt.tol.gram);
  row.on_sphere = on_boundary_sphere(rec.alpha, SphereCenter::Origin, opt.tol.sphere);
  return row;
}

/// All lattice phase tuples 2 pi j / grid (last phase fastest), for each
/// requested sign class. Rows come back in lattice order whatever `jobs` is.
inline std::vector<ScanRow> torus_scan(const ScanOptions& opt) {
  require_dim(opt.n);
  if (opt.grid < 2) throw InvalidInput("torus_scan: grid must be >= 2");
  const bool even = opt.n % 2 == 0;
  if (!even && opt.sign) throw InvalidInput("torus_scan: sign is only meaningful for even n");
  const int m = torus_phase_count(opt.n);

  std::vector<std::optional<int>> signs;
  if (!even) signs.push_back(std::nullopt);
  else if (opt.sign) signs.push_back(*opt.sign);
  else signs = {1, -1};

  std::size_t per_sign = 1;
  for (int i = 0; i < m; ++i) per_sign *= static_cast<std::size_t>(opt.grid);
  const std::size_t total = per_sign * signs.size();

  auto phases_at = [&](std::size_t idx) {
    std::vector<double> ph(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
      ph[i] = kTwoPi * static_cast<double>(idx % opt.grid) / opt.grid;
      idx /= opt.grid;
    }
    return ph;
  };

  std::vector<std::optional<ScanRow>> rows(total);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < total; i += stride)
      rows[i] = scan_point(opt.n, phases_at(i % per_sign), signs[i / per_sign], opt.classify);
  };
  const std::size_t jobs = static_cast<std::size_t>(std::clamp(opt.jobs, 1, 64));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
  }

  std::vector<ScanRow> out;
  out.reserve(total);
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

}  // namespace bwl
