#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <string>

namespace ndform {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;

/// Sparse matrices are stored compressed-row (CSR): outer index = row offsets,
/// inner indices = column indices, sorted within each row after makeCompressed().
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Runtime failure of a numerical operation (singular system, non-convergence, ...).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Axis-aligned rectangular domain (x0,x1) x (y0,y1).
struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

/// Parallelism cap from the NDFORM_THREADS environment variable; unset means 1,
/// which keeps every code path deterministic.
int thread_cap();

/// Applies thread_cap() to Eigen's internal parallelism. Safe to call repeatedly.
void configure_threading();

} // namespace ndform
