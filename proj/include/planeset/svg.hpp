#ifndef PLANESET_SVG_HPP
#define PLANESET_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "planeset/curves.hpp"
#include "planeset/packings.hpp"
#include "planeset/rect_scan.hpp"
#include "planeset/tangent_class.hpp"

namespace planeset {

inline const char* class_color(PointClass c) {
  switch (c) {
    case PointClass::A: return "#d62728";
    case PointClass::B: return "#1f77b4";
    case PointClass::AB: return "#ff7f0e";
    case PointClass::BA: return "#9467bd";
    case PointClass::C: return "#2ca02c";
    case PointClass::Unresolved: return "#7f7f7f";
  }
  return "#7f7f7f";
}

/// Drawables in world coordinates (y up). The document flips y.
class Scene {
 public:
  struct Polyline {
    std::vector<Point2> points;
    bool closed = false;
    std::string stroke;
  };
  struct Disk {
    Circle circle;
    std::string stroke, fill;
  };
  struct Square {
    SquareCell square;
    std::string stroke, fill;
  };
  struct Oval {
    EllipseCell ellipse;
    std::string stroke, fill;
  };
  struct Dot {
    Point2 at;
    std::string fill;
  };
  struct Witness {
    Point2 a, b, c, fourth;
  };
  struct Label {
    Point2 at;
    std::string text;
  };
  using Item = std::variant<Polyline, Disk, Square, Oval, Dot, Witness, Label>;

  void add_polyline(std::vector<Point2> pts, bool closed, std::string stroke = "#000000") {
    for (auto p : pts) grow(p, 0.0);
    items_.push_back(Polyline{std::move(pts), closed, std::move(stroke)});
  }
  void add_curve(const SampledCurve& c, std::string stroke = "#000000") { add_polyline(c.points(), true, std::move(stroke)); }
  void add_circle(const Circle& c, std::string stroke = "#000000", std::string fill = "none") {
    grow(c.center, c.radius);
    items_.push_back(Disk{c, std::move(stroke), std::move(fill)});
  }
  void add_square(const SquareCell& s, std::string stroke = "#000000", std::string fill = "none") {
    grow(s.center, s.half * std::numbers::sqrt2);
    items_.push_back(Square{s, std::move(stroke), std::move(fill)});
  }
  void add_ellipse(const EllipseCell& e, std::string stroke = "#000000", std::string fill = "none") {
    grow(e.center, std::max(e.a, e.b));
    items_.push_back(Oval{e, std::move(stroke), std::move(fill)});
  }
  void add_point(Point2 p, std::string fill = "#000000") {
    grow(p, 0.0);
    items_.push_back(Dot{p, std::move(fill)});
  }
  void add_witness(const RectangleWitness& w) {
    for (auto p : {w.a, w.b, w.c, w.fourth}) grow(p, 0.0);
    items_.push_back(Witness{w.a, w.b, w.c, w.fourth});
  }
  void add_label(Point2 p, std::string text) {
    grow(p, 0.0);
    items_.push_back(Label{p, std::move(text)});
  }

  /// Curve drawn in runs of equal label, coloured by class.
  void add_classified_curve(const SampledCurve& c, const std::vector<PointClass>& labels) {
    const std::size_t n = c.size();
    if (labels.size() != n) throw Error(Errc::BadParameter, "one label per vertex required");
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      std::vector<Point2> run{c[i]};
      while (j + 1 < n && labels[j + 1] == labels[i]) run.push_back(c[++j]);
      run.push_back(c[(j + 1) % n]);
      add_polyline(std::move(run), false, class_color(labels[i]));
      i = j + 1;
    }
  }

  /// Outer domain and every cell of a packing.
  void add_packing(const ShapePacking& p) {
    if (const auto* d = std::get_if<Circle>(&p.outer)) {
      add_circle(*d);
    } else {
      const auto& s = std::get<SquareDomain>(p.outer);
      add_square({s.center, s.half});
    }
    for (const auto& cell : p.cells) {
      if (const auto* d = std::get_if<Circle>(&cell)) {
        add_circle(*d, "#000000", "#dddddd");
      } else if (const auto* s = std::get_if<SquareCell>(&cell)) {
        add_square(*s, "#000000", "#dddddd");
      } else {
        add_ellipse(std::get<EllipseCell>(cell), "#000000", "#dddddd");
      }
    }
  }

  const std::vector<Item>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  /// Bounding box of all drawables; nullopt for an empty scene.
  std::optional<std::pair<Point2, Point2>> extent() const {
    if (items_.empty()) return std::nullopt;
    return std::make_pair(lo_, hi_);
  }

 private:
  void grow(Point2 p, double r) {
    if (items_.empty() && !grown_) {
      lo_ = {p.x - r, p.y - r};
      hi_ = {p.x + r, p.y + r};
      grown_ = true;
      return;
    }
    lo_ = {std::min(lo_.x, p.x - r), std::min(lo_.y, p.y - r)};
    hi_ = {std::max(hi_.x, p.x + r), std::max(hi_.y, p.y + r)};
  }

  std::vector<Item> items_;
  Point2 lo_, hi_;
  bool grown_ = false;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace detail

/// SVG 1.1 document; the view box adds a 5% margin on every side.
inline std::string render_svg(const Scene& scene) {
  using detail::svg_num;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  const auto ext = scene.extent();
  double x0 = 0, y0 = 0, w = 1, h = 1;
  if (ext) {
    const auto [lo, hi] = *ext;
    const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-12});
    const double ww = std::max(hi.x - lo.x, 1e-3 * span), hh = std::max(hi.y - lo.y, 1e-3 * span);
    const double cx = 0.5 * (lo.x + hi.x), cy = 0.5 * (lo.y + hi.y);
    w = 1.1 * ww;
    h = 1.1 * hh;
    x0 = cx - 0.5 * w;
    y0 = -cy - 0.5 * h;
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << svg_num(x0) << ' ' << svg_num(y0)
     << ' ' << svg_num(w) << ' ' << svg_num(h) << "\"";
  if (scene.empty()) {
    os << "/>\n";
    return os.str();
  }
  os << ">\n";
  const double sw = 0.003 * std::max(w, h);
  const double dot = 0.006 * std::max(w, h);
  auto pt = [](Point2 p) { return svg_num(p.x) + "," + svg_num(-p.y); };
  for (const auto& item : scene.items()) {
    if (const auto* p = std::get_if<Scene::Polyline>(&item)) {
      os << "  <" << (p->closed ? "polygon" : "polyline") << " points=\"";
      for (std::size_t i = 0; i < p->points.size(); ++i) os << (i ? " " : "") << pt(p->points[i]);
      os << "\" fill=\"none\" stroke=\"" << p->stroke << "\" stroke-width=\"" << svg_num(sw) << "\"/>\n";
    } else if (const auto* d = std::get_if<Scene::Disk>(&item)) {
      os << "  <circle cx=\"" << svg_num(d->circle.center.x) << "\" cy=\"" << svg_num(-d->circle.center.y) << "\" r=\""
         << svg_num(d->circle.radius) << "\" fill=\"" << d->fill << "\" stroke=\"" << d->stroke << "\" stroke-width=\""
         << svg_num(sw) << "\"/>\n";
    } else if (const auto* s = std::get_if<Scene::Square>(&item)) {
      const auto& q = s->square;
      os << "  <rect x=\"" << svg_num(q.center.x - q.half) << "\" y=\"" << svg_num(-q.center.y - q.half)
         << "\" width=\"" << svg_num(2 * q.half) << "\" height=\"" << svg_num(2 * q.half) << "\" fill=\"" << s->fill
         << "\" stroke=\"" << s->stroke << "\" stroke-width=\"" << svg_num(sw) << "\"/>\n";
    } else if (const auto* o = std::get_if<Scene::Oval>(&item)) {
      const auto& e = o->ellipse;
      os << "  <ellipse cx=\"" << svg_num(e.center.x) << "\" cy=\"" << svg_num(-e.center.y) << "\" rx=\""
         << svg_num(e.a) << "\" ry=\"" << svg_num(e.b) << "\" transform=\"rotate(" << svg_num(-e.angle * 180.0 / std::numbers::pi)
         << " " << svg_num(e.center.x) << " " << svg_num(-e.center.y) << ")\" fill=\"" << o->fill << "\" stroke=\""
         << o->stroke << "\" stroke-width=\"" << svg_num(sw) << "\"/>\n";
    } else if (const auto* t = std::get_if<Scene::Dot>(&item)) {
      os << "  <circle cx=\"" << svg_num(t->at.x) << "\" cy=\"" << svg_num(-t->at.y) << "\" r=\"" << svg_num(dot)
         << "\" fill=\"" << t->fill << "\"/>\n";
    } else if (const auto* wt = std::get_if<Scene::Witness>(&item)) {
      os << "  <g class=\"witness\">\n";
      os << "    <polygon points=\"" << pt(wt->a) << ' ' << pt(wt->b) << ' ' << pt(wt->c) << ' ' << pt(wt->fourth)
         << "\" fill=\"none\" stroke=\"#444444\" stroke-dasharray=\"" << svg_num(3 * sw) << "\" stroke-width=\""
         << svg_num(sw) << "\"/>\n";
      for (Point2 p : {wt->a, wt->b, wt->c}) {
        os << "    <circle class=\"corner\" cx=\"" << svg_num(p.x) << "\" cy=\"" << svg_num(-p.y) << "\" r=\""
           << svg_num(dot) << "\" fill=\"#000000\"/>\n";
      }
      os << "    <circle class=\"fourth\" cx=\"" << svg_num(wt->fourth.x) << "\" cy=\"" << svg_num(-wt->fourth.y)
         << "\" r=\"" << svg_num(2 * dot) << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << svg_num(sw)
         << "\"/>\n";
      os << "  </g>\n";
    } else if (const auto* l = std::get_if<Scene::Label>(&item)) {
      os << "  <text x=\"" << svg_num(l->at.x) << "\" y=\"" << svg_num(-l->at.y) << "\" font-size=\""
         << svg_num(0.03 * std::max(w, h)) << "\">" << detail::xml_escape(l->text) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

inline void render_svg(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  f << render_svg(scene);
  if (!f) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace planeset

#endif  // PLANESET_SVG_HPP
