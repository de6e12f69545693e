// Exact vertex enumeration for subsets of the probability simplex cut out by
// half-spaces a . mu >= b. Incremental double description with the
// combinatorial adjacency test; header-only so any exact field works.

#ifndef WPB_POLYTOPE_HPP
#define WPB_POLYTOPE_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace wpb::polytope {

template <typename Scalar>
struct HalfSpace {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a;
  Scalar b;
};

template <typename Scalar>
struct Vertex {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> point;
  std::vector<std::size_t> tight;  // sorted constraint ids
};

namespace detail {

inline std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool includes(const std::vector<std::size_t>& super, const std::vector<std::size_t>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

template <typename Scalar>
bool adjacent(const std::vector<Vertex<Scalar>>& vs, std::size_t u, std::size_t v) {
  const auto common = intersect(vs[u].tight, vs[v].tight);
  for (std::size_t w = 0; w < vs.size(); ++w) {
    if (w == u || w == v) continue;
    if (includes(vs[w].tight, common)) return false;
  }
  return true;
}

}  // namespace detail

/// Vertices of {mu >= 0, sum mu = 1, a_j . mu >= b_j}. Constraint ids 0..n-1
/// are the coordinate bounds and n + j is half-space j. Empty result means
/// the region is empty.
template <typename Scalar>
std::vector<Vertex<Scalar>> simplex_vertices(std::size_t n, const std::vector<HalfSpace<Scalar>>& cuts) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  std::vector<Vertex<Scalar>> vs;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex<Scalar> v{Vec::Zero(static_cast<Eigen::Index>(n)), {}};
    v.point[static_cast<Eigen::Index>(i)] = Scalar(1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) v.tight.push_back(k);
    vs.push_back(std::move(v));
  }

  for (std::size_t j = 0; j < cuts.size() && !vs.empty(); ++j) {
    const std::size_t id = n + j;
    std::vector<Scalar> slack;
    slack.reserve(vs.size());
    bool any_negative = false;
    for (const auto& v : vs) {
      slack.push_back(cuts[j].a.dot(v.point) - cuts[j].b);
      any_negative = any_negative || slack.back() < 0;
    }
    if (!any_negative) {
      for (std::size_t k = 0; k < vs.size(); ++k)
        if (slack[k] == 0) vs[k].tight.push_back(id);
      continue;
    }

    std::vector<Vertex<Scalar>> next;
    for (std::size_t u = 0; u < vs.size(); ++u) {
      if (slack[u] < 0) continue;
      Vertex<Scalar> kept = vs[u];
      if (slack[u] == 0) kept.tight.push_back(id);
      next.push_back(std::move(kept));
    }
    for (std::size_t u = 0; u < vs.size(); ++u) {
      if (!(slack[u] > 0)) continue;
      for (std::size_t v = 0; v < vs.size(); ++v) {
        if (!(slack[v] < 0) || !detail::adjacent(vs, u, v)) continue;
        const Scalar t = slack[u] / (slack[u] - slack[v]);
        Vertex<Scalar> w{vs[u].point + (vs[v].point - vs[u].point) * t,
                         detail::intersect(vs[u].tight, vs[v].tight)};
        w.tight.push_back(id);
        const bool dup =
            std::any_of(next.begin(), next.end(), [&](const Vertex<Scalar>& e) { return e.point == w.point; });
        if (!dup) next.push_back(std::move(w));
      }
    }
    vs = std::move(next);
  }
  return vs;
}

/// Minimum of p . mu over a nonempty vertex list.
template <typename Scalar>
Scalar minimum(const std::vector<Vertex<Scalar>>& vs, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& p) {
  Scalar best = p.dot(vs.front().point);
  for (const auto& v : vs) best = std::min<Scalar>(best, p.dot(v.point));
  return best;
}


namespace detail {

// Solves A lambda = b exactly for a full-column-rank A; nullopt when A is
// rank deficient or the system is inconsistent.
template <typename Scalar>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> solve_exact(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols; ++c, ++r) {
    Eigen::Index pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) return std::nullopt;
    a.row(r).swap(a.row(pivot));
    std::swap(b[r], b[pivot]);
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (k == r || a(k, c) == 0) continue;
      const Scalar f = a(k, c) / a(r, c);
      a.row(k) -= a.row(r) * f;
      b[k] -= b[r] * f;
    }
  }
  for (Eigen::Index k = cols; k < rows; ++k)
    if (b[k] != 0) return std::nullopt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(cols);
  for (Eigen::Index c = 0; c < cols; ++c) x[c] = b[c] / a(c, c);
  return x;
}

}  // namespace detail

/// Whether p lies in the convex hull of pts[idx...], by Caratheodory: some
/// affinely independent subset of at most dim + 1 points contains it.
template <typename Scalar>
bool in_hull(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& p,
             const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& pts, const std::vector<std::size_t>& idx) {
  const auto dim = p.size();
  const std::size_t max_m = std::min<std::size_t>(idx.size(), static_cast<std::size_t>(dim) + 1);
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t m) -> bool {
    if (pick.size() == m) {
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(dim + 1, static_cast<Eigen::Index>(m));
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b(dim + 1);
      for (std::size_t j = 0; j < m; ++j) {
        a.col(static_cast<Eigen::Index>(j)).head(dim) = pts[pick[j]];
        a(dim, static_cast<Eigen::Index>(j)) = Scalar(1);
      }
      b.head(dim) = p;
      b[dim] = Scalar(1);
      auto lambda = detail::solve_exact<Scalar>(a, b);
      if (!lambda) return false;
      for (Eigen::Index j = 0; j < lambda->size(); ++j)
        if ((*lambda)[j] < 0) return false;
      return true;
    }
    for (std::size_t i = start; i < idx.size(); ++i) {
      pick.push_back(idx[i]);
      if (rec(i + 1, m)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t m = 1; m <= max_m; ++m) {
    pick.clear();
    if (rec(0, m)) return true;
  }
  return false;
}

/// Indices of the extreme points among distinct points lying on a common
/// hyperplane sum = const, in input order. Dimensions up to two use exact
/// sorting and hull walking; higher ones an exact Caratheodory test.
template <typename Scalar>
std::vector<std::size_t> extreme_points(const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& points) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const std::size_t k = points.size();
  if (k <= 1) {
    std::vector<std::size_t> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    return all;
  }
  const Eigen::Index d = points.front().size() - 1;  // drop the last coordinate
  std::vector<Vec> proj;
  for (const auto& p : points) proj.push_back(p.head(d));
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  auto lex = [&](std::size_t a, std::size_t b) {
    for (Eigen::Index c = 0; c < d; ++c) {
      if (proj[a][c] < proj[b][c]) return true;
      if (proj[b][c] < proj[a][c]) return false;
    }
    return false;
  };
  std::vector<std::size_t> out;
  if (d <= 1) {
    std::sort(order.begin(), order.end(), lex);
    out.push_back(order.front());
    if (d == 1) out.push_back(order.back());
  } else if (d == 2) {
    std::sort(order.begin(), order.end(), lex);
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
      return (proj[a][0] - proj[o][0]) * (proj[b][1] - proj[o][1]) -
             (proj[a][1] - proj[o][1]) * (proj[b][0] - proj[o][0]);
    };
    std::vector<std::size_t> hull;
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t base = hull.size();
      for (std::size_t i : order) {
        while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), i) <= 0) hull.pop_back();
        hull.push_back(i);
      }
      hull.pop_back();
      std::reverse(order.begin(), order.end());
    }
    out = hull;
    if (out.empty()) out.push_back(order.front());
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) others.push_back(j);
      if (!in_hull<Scalar>(proj[i], proj, others)) out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace wpb::polytope

#endif  // WPB_POLYTOPE_HPP
