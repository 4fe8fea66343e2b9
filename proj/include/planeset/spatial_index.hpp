#ifndef PLANESET_SPATIAL_INDEX_HPP
#define PLANESET_SPATIAL_INDEX_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "planeset/geom.hpp"

namespace planeset {

namespace detail {

// Dense uniform grid over a bounding box, items stored in CSR layout.
class UniformGrid {
 public:
  static constexpr std::int64_t kMaxCells = std::int64_t{1} << 22;

  UniformGrid() = default;

  UniformGrid(Point2 lo, Point2 hi, double cell) : origin_(lo), cell_(cell) {
    if (!(cell > 0) || !std::isfinite(cell)) {
      throw Error(Errc::BadParameter, "grid cell size must be positive");
    }
    auto dims = [&](double c) {
      nx_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((hi.x - lo.x) / c)) + 1);
      ny_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor((hi.y - lo.y) / c)) + 1);
    };
    dims(cell_);
    // very fine cells on a wide set: coarsen until the grid fits
    while (nx_ * ny_ > kMaxCells) {
      cell_ *= 2.0;
      dims(cell_);
    }
  }

  double cell() const { return cell_; }
  std::int64_t nx() const { return nx_; }
  std::int64_t ny() const { return ny_; }

  // Unclamped cell coordinate.
  std::int64_t col_of(double x) const {
    return static_cast<std::int64_t>(std::floor((x - origin_.x) / cell_));
  }
  std::int64_t row_of(double y) const {
    return static_cast<std::int64_t>(std::floor((y - origin_.y) / cell_));
  }
  std::int64_t clamp_col(std::int64_t c) const { return std::clamp<std::int64_t>(c, 0, nx_ - 1); }
  std::int64_t clamp_row(std::int64_t r) const { return std::clamp<std::int64_t>(r, 0, ny_ - 1); }
  double x0(std::int64_t col) const { return origin_.x + static_cast<double>(col) * cell_; }
  double y0(std::int64_t row) const { return origin_.y + static_cast<double>(row) * cell_; }
  std::int64_t id(std::int64_t col, std::int64_t row) const { return row * nx_ + col; }

  // items[i] covers the inclusive cell box boxes[i] = {c0, r0, c1, r1}
  void fill(const std::vector<std::array<std::int64_t, 4>>& boxes) {
    start_.assign(static_cast<std::size_t>(nx_ * ny_ + 1), 0);
    for (const auto& b : boxes) {
      for (auto r = b[1]; r <= b[3]; ++r)
        for (auto c = b[0]; c <= b[2]; ++c) ++start_[static_cast<std::size_t>(id(c, r) + 1)];
    }
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    items_.assign(start_.back(), 0);
    std::vector<std::uint32_t> cursor(start_.begin(), start_.end() - 1);
    for (std::size_t k = 0; k < boxes.size(); ++k) {
      const auto& b = boxes[k];
      for (auto r = b[1]; r <= b[3]; ++r)
        for (auto c = b[0]; c <= b[2]; ++c)
          items_[cursor[static_cast<std::size_t>(id(c, r))]++] = static_cast<std::uint32_t>(k);
    }
  }

  std::span<const std::uint32_t> cell_items(std::int64_t col, std::int64_t row) const {
    const auto i = static_cast<std::size_t>(id(col, row));
    return {items_.data() + start_[i], items_.data() + start_[i + 1]};
  }

  // Lower bound on the distance from p to any point of cell (col,row).
  double cell_distance(Point2 p, std::int64_t col, std::int64_t row) const {
    const double cx0 = x0(col), cy0 = y0(row);
    const double dx = std::max({cx0 - p.x, 0.0, p.x - (cx0 + cell_)});
    const double dy = std::max({cy0 - p.y, 0.0, p.y - (cy0 + cell_)});
    return std::hypot(dx, dy);
  }

 private:
  Point2 origin_;
  double cell_ = 1.0;
  std::int64_t nx_ = 1;
  std::int64_t ny_ = 1;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

inline std::pair<Point2, Point2> bounding_box(std::span<const Point2> pts) {
  Point2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& p : pts) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return {lo, hi};
}


// Visits grid cells in Chebyshev rings around p, nearest rings first, and
// stops once no unvisited cell can hold anything closer than best2 or limit.
template <class CellFn>
void ring_search(const UniformGrid& grid, Point2 p, double limit, double& best2, CellFn&& scan_cell) {
  const auto pc = grid.col_of(p.x);
  const auto pr = grid.row_of(p.y);
  const std::int64_t gap_c = pc < 0 ? -pc : (pc >= grid.nx() ? pc - grid.nx() + 1 : 0);
  const std::int64_t gap_r = pr < 0 ? -pr : (pr >= grid.ny() ? pr - grid.ny() + 1 : 0);
  const std::int64_t k0 = std::max(gap_c, gap_r);
  const std::int64_t max_ring =
      std::max({std::abs(pc), std::abs(pr), std::abs(grid.nx() - 1 - pc), std::abs(grid.ny() - 1 - pr)});
  for (std::int64_t k = k0; k <= max_ring; ++k) {
    const double ring_lb = static_cast<double>(std::max<std::int64_t>(0, k - 1)) * grid.cell();
    if (ring_lb * ring_lb > best2 || ring_lb > limit) break;
    const auto row_lo = std::max<std::int64_t>(pr - k, 0);
    const auto row_hi = std::min<std::int64_t>(pr + k, grid.ny() - 1);
    for (auto row = row_lo; row <= row_hi; ++row) {
      if (row == pr - k || row == pr + k) {
        const auto col_lo = std::max<std::int64_t>(pc - k, 0);
        const auto col_hi = std::min<std::int64_t>(pc + k, grid.nx() - 1);
        for (auto col = col_lo; col <= col_hi; ++col) scan_cell(col, row);
      } else {
        if (pc - k >= 0 && pc - k < grid.nx()) scan_cell(pc - k, row);
        if (k > 0 && pc + k >= 0 && pc + k < grid.nx()) scan_cell(pc + k, row);
      }
    }
  }
}

}  // namespace detail

/// Uniform-grid hash of a point set with exact disk range queries.
class SpatialIndex {
 public:
  SpatialIndex(std::span<const Point2> points, double cell) : points_(points.begin(), points.end()) {
    if (!(cell > 0)) throw Error(Errc::BadParameter, "index cell must be positive");
    if (points_.empty()) {
      grid_ = detail::UniformGrid({0, 0}, {0, 0}, cell);
      grid_.fill({});
      return;
    }
    const auto [lo, hi] = detail::bounding_box(points_);
    grid_ = detail::UniformGrid(lo, hi, cell);
    std::vector<std::array<std::int64_t, 4>> boxes;
    boxes.reserve(points_.size());
    for (const auto& p : points_) {
      const auto c = grid_.clamp_col(grid_.col_of(p.x));
      const auto r = grid_.clamp_row(grid_.row_of(p.y));
      boxes.push_back({c, r, c, r});
    }
    grid_.fill(boxes);
  }

  const std::vector<Point2>& points() const { return points_; }
  double cell() const { return grid_.cell(); }

  /// Calls f(index) for every point with |q - p| <= r.
  template <class F>
  void for_each_in_disk(Point2 p, double r, F&& f) const {
    if (r < 0 || points_.empty()) return;
    const double r2 = r * r;
    if (r > 8.0 * grid_.cell()) {
      for (std::size_t i = 0; i < points_.size(); ++i)
        if (distance2(points_[i], p) <= r2) f(i);
      return;
    }
    const auto c0 = grid_.clamp_col(grid_.col_of(p.x - r));
    const auto c1 = grid_.clamp_col(grid_.col_of(p.x + r));
    const auto r0 = grid_.clamp_row(grid_.row_of(p.y - r));
    const auto r1 = grid_.clamp_row(grid_.row_of(p.y + r));
    for (auto row = r0; row <= r1; ++row)
      for (auto col = c0; col <= c1; ++col)
        for (auto i : grid_.cell_items(col, row))
          if (distance2(points_[i], p) <= r2) f(static_cast<std::size_t>(i));
  }

  /// Indices of points within distance r of p, ascending.
  std::vector<std::size_t> query(Point2 p, double r) const {
    std::vector<std::size_t> out;
    for_each_in_disk(p, r, [&](std::size_t i) { out.push_back(i); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Distance to the nearest indexed point (infinity for an empty index).
  double nearest_distance(Point2 p) const {
    double best2 = std::numeric_limits<double>::infinity();
    ring_search(p, std::numeric_limits<double>::infinity(), best2);
    return std::sqrt(best2);
  }

 private:
  void ring_search(Point2 p, double limit, double& best2) const {
    if (points_.empty()) return;
    detail::ring_search(grid_, p, limit, best2, [&](std::int64_t col, std::int64_t row) {
      for (auto i : grid_.cell_items(col, row)) best2 = std::min(best2, distance2(points_[i], p));
    });
  }

  std::vector<Point2> points_;
  detail::UniformGrid grid_;
};

inline SpatialIndex build_index(std::span<const Point2> points, double cell) { return SpatialIndex(points, cell); }

/// Grid over the segments of an open or closed polyline. Supports exact
/// point-to-polyline distance and enumeration of segments that can meet a
/// circle.
class PolylineIndex {
 public:
  PolylineIndex(std::vector<Point2> points, bool closed, double cell = 0.0)
      : points_(std::move(points)), closed_(closed) {
    if (points_.size() < 2) throw Error(Errc::EmptySet, "polyline needs at least two points");
    nseg_ = closed_ ? points_.size() : points_.size() - 1;
    if (!(cell > 0)) {
      double total = 0;
      for (std::size_t i = 0; i < nseg_; ++i) total += distance(seg_start(i), seg_end(i));
      cell = 2.0 * total / static_cast<double>(nseg_);
    }
    const auto [lo, hi] = detail::bounding_box(points_);
    if (!(cell > 0)) cell = std::max(hi.x - lo.x, hi.y - lo.y) + 1.0;
    grid_ = detail::UniformGrid(lo, hi, cell);
    std::vector<std::array<std::int64_t, 4>> boxes;
    boxes.reserve(nseg_);
    for (std::size_t i = 0; i < nseg_; ++i) {
      const Point2 a = seg_start(i), b = seg_end(i);
      boxes.push_back({grid_.clamp_col(grid_.col_of(std::min(a.x, b.x))),
                       grid_.clamp_row(grid_.row_of(std::min(a.y, b.y))),
                       grid_.clamp_col(grid_.col_of(std::max(a.x, b.x))),
                       grid_.clamp_row(grid_.row_of(std::max(a.y, b.y)))});
    }
    grid_.fill(boxes);
  }

  const std::vector<Point2>& points() const { return points_; }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return nseg_; }
  double cell() const { return grid_.cell(); }
  Point2 seg_start(std::size_t i) const { return points_[i]; }
  Point2 seg_end(std::size_t i) const { return points_[(i + 1) % points_.size()]; }

  double nearest_distance(Point2 p) const {
    double best2 = std::numeric_limits<double>::infinity();
    ring_search(p, std::numeric_limits<double>::infinity(), best2);
    return std::sqrt(best2);
  }

  /// Exact distance if it is <= limit, nullopt otherwise.
  std::optional<double> distance_within(Point2 p, double limit) const {
    double best2 = std::numeric_limits<double>::infinity();
    ring_search(p, limit, best2);
    const double d = std::sqrt(best2);
    if (d <= limit) return d;
    return std::nullopt;
  }

  /// Segment indices (ascending, unique) registered in grid cells that the
  /// annulus r +- band around the circle passes through. When windows are
  /// given only cells touching one of the window disks are visited.
  std::vector<std::uint32_t> segments_near_circle(const Circle& circle, double band,
                                                  std::span<const Circle> windows) const {
    std::vector<std::uint32_t> out;
    const double slack = 1e-12 * (circle.radius + grid_.cell());
    const double r_out = circle.radius + band + slack;
    const double r_in = circle.radius - band - slack;
    const Point2 c = circle.center;

    auto visit_rows = [&](std::int64_t row_lo, std::int64_t row_hi, std::int64_t col_lo, std::int64_t col_hi) {
      row_lo = std::max(row_lo, grid_.clamp_row(grid_.row_of(c.y - r_out)));
      row_hi = std::min(row_hi, grid_.clamp_row(grid_.row_of(c.y + r_out)));
      for (auto row = row_lo; row <= row_hi; ++row) {
        const double y0 = grid_.y0(row), y1 = y0 + grid_.cell();
        const double dy_min = (c.y >= y0 && c.y <= y1) ? 0.0 : std::min(std::abs(y0 - c.y), std::abs(y1 - c.y));
        const double dy_max = std::max(std::abs(y0 - c.y), std::abs(y1 - c.y));
        if (dy_min > r_out) continue;
        const double x_out = std::sqrt(r_out * r_out - dy_min * dy_min);
        const double x_in = r_in > dy_max ? std::sqrt(r_in * r_in - dy_max * dy_max) : -1.0;
        auto visit_cols = [&](std::int64_t lo, std::int64_t hi) {
          lo = std::max(lo, col_lo);
          hi = std::min(hi, col_hi);
          for (auto col = lo; col <= hi; ++col)
            for (auto s : grid_.cell_items(col, row)) out.push_back(s);
        };
        const auto lo = grid_.clamp_col(grid_.col_of(c.x - x_out));
        const auto hi = grid_.clamp_col(grid_.col_of(c.x + x_out));
        if (x_in > 0) {
          // cells strictly inside the inner disk's chord are skipped
          const auto in_lo = grid_.col_of(c.x - x_in);
          const auto in_hi = grid_.col_of(c.x + x_in);
          if (in_hi - in_lo >= 2) {
            visit_cols(lo, std::min(hi, in_lo));
            visit_cols(std::max(lo, in_hi), hi);
            continue;
          }
        }
        visit_cols(lo, hi);
      }
    };

    if (windows.empty()) {
      visit_rows(0, grid_.ny() - 1, 0, grid_.nx() - 1);
    } else {
      for (const auto& w : windows) {
        visit_rows(grid_.clamp_row(grid_.row_of(w.center.y - w.radius)),
                   grid_.clamp_row(grid_.row_of(w.center.y + w.radius)),
                   grid_.clamp_col(grid_.col_of(w.center.x - w.radius)),
                   grid_.clamp_col(grid_.col_of(w.center.x + w.radius)));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void ring_search(Point2 p, double limit, double& best2) const {
    detail::ring_search(grid_, p, limit, best2,
                        [&](std::int64_t col, std::int64_t row) { scan_cell(p, col, row, best2); });
  }

  void scan_cell(Point2 p, std::int64_t col, std::int64_t row, double& best2) const {
    const double lb = grid_.cell_distance(p, col, row);
    if (lb * lb > best2) return;
    for (auto s : grid_.cell_items(col, row)) {
      best2 = std::min(best2, point_segment_distance2(p, seg_start(s), seg_end(s)));
    }
  }

  std::vector<Point2> points_;
  bool closed_;
  std::size_t nseg_ = 0;
  detail::UniformGrid grid_;
};

}  // namespace planeset

#endif  // PLANESET_SPATIAL_INDEX_HPP
