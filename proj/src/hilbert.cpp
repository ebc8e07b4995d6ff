#include "drkit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drkit/errors.hpp"

namespace drkit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::MatrixXd basis_matrix(Eigen::Index dim, std::span<const Point> dirs) {
  for (const auto& d : dirs) require_dim(d, dim, "ConvexSet::affine");
  auto ortho = orthonormalize(dirs);
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(ortho.size()));
  for (std::size_t i = 0; i < ortho.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = ortho[i];
  return m;
}

}  // namespace

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

void require_dim(const Point& x, Eigen::Index dim, const char* where) {
  if (x.size() != dim) throw DimensionMismatch(dim, x.size(), where);
}

bool is_finite(const Point& x) { return x.allFinite(); }

void require_finite(const Point& x, const char* where) {
  if (!x.allFinite())
    throw InvalidArgument(std::string(where) + ": non-finite coordinate");
}

double inner(const Point& x, const Point& y) {
  require_dim(y, x.size(), "inner");
  return x.dot(y);
}

std::vector<Point> orthonormalize(std::span<const Point> basis) {
  std::vector<Point> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Point& v = basis[i];
    if (!out.empty()) require_dim(v, out.front().size(), "orthonormalize");
    const double scale = v.norm();
    Point w = v;
    // Second pass restores orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) w -= q.dot(w) * q;
    const double n = w.norm();
    if (!(scale > 0.0) || n <= 1e-10 * scale) throw RankDeficient(i);
    out.push_back(w / n);
  }
  return out;
}

ConvexSet ConvexSet::affine(const Point& offset,
                            std::span<const Point> directions) {
  require_finite(offset, "ConvexSet::affine");
  Eigen::MatrixXd b = basis_matrix(offset.size(), directions);
  // Store the offset as the point of the set closest to the origin.
  Point off = offset - b * (b.transpose() * offset);
  return ConvexSet(AffineSubspace{std::move(off), std::move(b)});
}

ConvexSet ConvexSet::subspace(Eigen::Index dim,
                              std::span<const Point> directions) {
  return affine(Point::Zero(dim), directions);
}

ConvexSet ConvexSet::whole_space(Eigen::Index dim) {
  return ConvexSet(AffineSubspace{Point::Zero(dim),
                                  Eigen::MatrixXd::Identity(dim, dim)});
}

ConvexSet ConvexSet::orthant(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("ConvexSet::orthant: dim must be >= 1");
  return ConvexSet(NonnegativeOrthant{dim});
}

ConvexSet ConvexSet::box(const Point& lower, const Point& upper) {
  require_dim(upper, lower.size(), "ConvexSet::box");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower(i)) || std::isnan(upper(i)) || lower(i) > upper(i) ||
        lower(i) == INFINITY || upper(i) == -INFINITY)
      throw InvalidArgument("ConvexSet::box: need lower <= upper in coordinate " +
                            std::to_string(i));
  }
  return ConvexSet(Box{lower, upper});
}

ConvexSet ConvexSet::ball(const Point& center, double radius) {
  require_finite(center, "ConvexSet::ball");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("ConvexSet::ball: radius must be positive");
  return ConvexSet(Ball{center, radius});
}

ConvexSet ConvexSet::singleton(const Point& p) {
  require_finite(p, "ConvexSet::singleton");
  return ConvexSet(Singleton{p});
}

Eigen::Index ConvexSet::dim() const {
  return std::visit(
      Overloaded{[](const AffineSubspace& s) { return s.offset.size(); },
                 [](const NonnegativeOrthant& s) { return s.dim; },
                 [](const Box& s) { return s.lower.size(); },
                 [](const Ball& s) { return s.center.size(); },
                 [](const Singleton& s) { return s.point.size(); }},
      set_);
}

Point ConvexSet::project(const Point& x) const {
  require_dim(x, dim(), "project");
  return std::visit(
      Overloaded{
          [&](const AffineSubspace& s) -> Point {
            return s.offset + s.basis * (s.basis.transpose() * (x - s.offset));
          },
          [&](const NonnegativeOrthant&) -> Point { return x.cwiseMax(0.0); },
          [&](const Box& s) -> Point {
            return x.cwiseMax(s.lower).cwiseMin(s.upper);
          },
          [&](const Ball& s) -> Point {
            const Point d = x - s.center;
            const double n = d.norm();
            if (n <= s.radius) return x;
            return s.center + (s.radius / n) * d;
          },
          [&](const Singleton& s) -> Point { return s.point; }},
      set_);
}

bool ConvexSet::is_affine() const {
  return std::holds_alternative<AffineSubspace>(set_) ||
         std::holds_alternative<Singleton>(set_);
}

bool ConvexSet::is_linear_subspace() const {
  if (const auto* a = std::get_if<AffineSubspace>(&set_))
    return a->offset.norm() <= kOrthoTol;
  if (const auto* s = std::get_if<Singleton>(&set_))
    return s->point.norm() <= kOrthoTol;
  return false;
}

Eigen::MatrixXd ConvexSet::direction_projector() const {
  if (const auto* a = std::get_if<AffineSubspace>(&set_))
    return a->basis * a->basis.transpose();
  if (const auto* s = std::get_if<Singleton>(&set_))
    return Eigen::MatrixXd::Zero(s->point.size(), s->point.size());
  throw InvalidArgument("direction_projector: set is not affine");
}

std::string ConvexSet::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{[&](const AffineSubspace& s) {
                          os << "affine(dim=" << s.offset.size()
                             << ", rank=" << s.basis.cols() << ")";
                        },
                        [&](const NonnegativeOrthant& s) {
                          os << "orthant(dim=" << s.dim << ")";
                        },
                        [&](const Box& s) {
                          os << "box(dim=" << s.lower.size() << ")";
                        },
                        [&](const Ball& s) {
                          os << "ball(dim=" << s.center.size()
                             << ", r=" << s.radius << ")";
                        },
                        [&](const Singleton& s) {
                          os << "singleton(dim=" << s.point.size() << ")";
                        }},
             set_);
  return os.str();
}

Point project(const ConvexSet& s, const Point& x) { return s.project(x); }

}  // namespace drkit
