#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace drkit {

/// An element of the ambient space R^d.
using Point = Eigen::VectorXd;

/// Absolute tolerance for orthonormality of affine direction bases.
inline constexpr double kOrthoTol = 1e-12;

Point make_point(std::initializer_list<double> coords);

/// Throws DimensionMismatch naming `where` unless x has dimension `dim`.
void require_dim(const Point& x, Eigen::Index dim, const char* where);

/// Throws InvalidArgument unless every coordinate is finite.
void require_finite(const Point& x, const char* where);

bool is_finite(const Point& x);

double inner(const Point& x, const Point& y);

/// Gram-Schmidt (two passes). Throws RankDeficient naming the first vector
/// that lies in the span of its predecessors.
std::vector<Point> orthonormalize(std::span<const Point> basis);

struct AffineSubspace {
  Point offset;
  /// Orthonormal directions, one per column (d x k, k may be 0).
  Eigen::MatrixXd basis;
};

struct NonnegativeOrthant {
  Eigen::Index dim;
};

/// Coordinatewise bounds; +-infinity allowed.
struct Box {
  Point lower;
  Point upper;
};

struct Ball {
  Point center;
  double radius;
};

struct Singleton {
  Point point;
};

/// A nonempty closed convex subset of R^d with an exact projector.
class ConvexSet {
 public:
  using Variant =
      std::variant<AffineSubspace, NonnegativeOrthant, Box, Ball, Singleton>;

  /// offset + span(directions); directions need not be orthonormal.
  static ConvexSet affine(const Point& offset,
                          std::span<const Point> directions);
  /// Linear subspace spanned by `directions`.
  static ConvexSet subspace(Eigen::Index dim,
                            std::span<const Point> directions);
  static ConvexSet whole_space(Eigen::Index dim);
  static ConvexSet orthant(Eigen::Index dim);
  static ConvexSet box(const Point& lower, const Point& upper);
  static ConvexSet ball(const Point& center, double radius);
  static ConvexSet singleton(const Point& p);

  Eigen::Index dim() const;
  Point project(const Point& x) const;

  /// AffineSubspace or Singleton.
  bool is_affine() const;
  /// Affine and contains the origin.
  bool is_linear_subspace() const;

  /// Orthogonal projector onto the direction space of an affine set, as a
  /// d x d matrix. Throws InvalidArgument for non-affine sets.
  Eigen::MatrixXd direction_projector() const;

  std::string describe() const;
  const Variant& variant() const { return set_; }

 private:
  explicit ConvexSet(Variant v) : set_(std::move(v)) {}

  Variant set_;
};

Point project(const ConvexSet& s, const Point& x);

}  // namespace drkit
