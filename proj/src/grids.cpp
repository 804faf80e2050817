#include "hsn/grids.hpp"

#include <cmath>
#include <stdexcept>

namespace hsn {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_axes(std::vector<Eigen::VectorXd>& pts, int dim) {
  for (int j = 0; j < dim; ++j)
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e[j] = s;
      pts.push_back(e);
    }
}

}  // namespace

std::vector<Eigen::VectorXd> sphere_samples(int dim, int count) {
  if (dim < 1) throw std::invalid_argument("sphere_samples: dim must be >= 1");
  std::vector<Eigen::VectorXd> pts;
  if (dim == 1) {
    append_axes(pts, 1);
    return pts;
  }
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      double th = 2 * kPi * (i + 0.5) / count;
      Eigen::VectorXd p(2);
      p << std::cos(th), std::sin(th);
      pts.push_back(p);
    }
  } else if (dim == 3) {
    // Fibonacci sphere
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = ga * i;
      Eigen::VectorXd p(3);
      p << r * std::cos(th), r * std::sin(th), z;
      pts.push_back(p);
    }
  } else {
    // product angular grid; adequate at desk scale (dim <= 4 in practice)
    int k = std::max(2, static_cast<int>(std::round(std::pow(double(count), 1.0 / (dim - 1)))));
    std::vector<Eigen::VectorXd> cur;
    cur.emplace_back(Eigen::VectorXd::Ones(1));
    for (int ax = 1; ax < dim; ++ax) {
      std::vector<Eigen::VectorXd> next;
      bool last = (ax == dim - 1);
      int steps = last ? 2 * k : k;
      for (const auto& base : cur) {
        for (int i = 0; i < steps; ++i) {
          double th = (last ? 2 * kPi : kPi) * (i + 0.5) / steps;
          // base is a direction on S^{ax-1}; extend with polar angle th
          Eigen::VectorXd p(ax + 1);
          for (int j = 0; j < ax; ++j) p[j] = base[j] * std::sin(th);
          p[ax] = std::cos(th);
          next.push_back(p);
        }
      }
      cur = std::move(next);
    }
    pts = std::move(cur);
  }
  append_axes(pts, dim);
  return pts;
}

std::vector<FrequencySample> frequency_grid(int n, const GridConfig& cfg) {
  if (n < 1) throw std::invalid_argument("frequency_grid: n must be >= 1");
  if (!(cfg.xi_min > 0) || !(cfg.xi_max > cfg.xi_min))
    throw std::invalid_argument("frequency_grid: need 0 < xi_min < xi_max");
  if (cfg.radial < 2) throw std::invalid_argument("frequency_grid: radial must be >= 2");

  // directions and angular weights (surface measure of S^{n-1} split evenly)
  std::vector<Eigen::VectorXd> dirs;
  double ang_w = 1.0;
  if (n == 1) {
    dirs.push_back(Eigen::VectorXd::Constant(1, 1.0));
    dirs.push_back(Eigen::VectorXd::Constant(1, -1.0));
    ang_w = 1.0;
  } else if (n == 2) {
    int c = std::max(2, cfg.angular);
    for (int i = 0; i < c; ++i) {
      double th = 2 * kPi * i / c;  // includes antipodes when c is even
      Eigen::VectorXd p(2);
      p << std::cos(th), std::sin(th);
      dirs.push_back(p);
    }
    ang_w = 2 * kPi / c;
  } else {
    int c = std::max(2, cfg.angular);
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < c; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / c;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Eigen::VectorXd p(3);
      p << r * std::cos(ga * i), r * std::sin(ga * i), z;
      dirs.push_back(p);
    }
    ang_w = 4 * kPi / c;
  }

  // trapezoid in u = log r; d xi = r^{n-1} dr dsigma = r^n du dsigma
  std::vector<FrequencySample> out;
  double u0 = std::log(cfg.xi_min), u1 = std::log(cfg.xi_max);
  double du = (u1 - u0) / (cfg.radial - 1);
  for (int i = 0; i < cfg.radial; ++i) {
    double u = u0 + i * du;
    double r = std::exp(u);
    double wu = du * ((i == 0 || i == cfg.radial - 1) ? 0.5 : 1.0);
    for (const auto& d : dirs) out.push_back({r * d, wu * std::pow(r, n) * ang_w});
  }
  return out;
}

}  // namespace hsn
