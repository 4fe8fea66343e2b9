#ifndef PLANESET_PACKING_IO_HPP
#define PLANESET_PACKING_IO_HPP

#include <string>

#include <json.hpp>

#include "planeset/packings.hpp"

namespace planeset {

namespace detail {

inline nlohmann::json point_json(Point2 p) { return nlohmann::json{{"x", p.x}, {"y", p.y}}; }

inline Point2 json_point(const nlohmann::json& j) { return {j.at("x").get<double>(), j.at("y").get<double>()}; }

inline nlohmann::json cell_json(const Cell& c) {
  struct V {
    nlohmann::json operator()(const Circle& s) const {
      return {{"type", "circle"}, {"center", point_json(s.center)}, {"radius", s.radius}};
    }
    nlohmann::json operator()(const SquareCell& s) const {
      return {{"type", "square"}, {"center", point_json(s.center)}, {"half", s.half}};
    }
    nlohmann::json operator()(const EllipseCell& s) const {
      return {{"type", "ellipse"}, {"center", point_json(s.center)}, {"a", s.a}, {"b", s.b}, {"angle", s.angle}};
    }
  };
  return std::visit(V{}, c);
}

inline Cell json_cell(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  const Point2 c = json_point(j.at("center"));
  if (type == "circle") return Circle(c, j.at("radius").get<double>());
  if (type == "square") return SquareCell{c, j.at("half").get<double>()};
  if (type == "ellipse") {
    return EllipseCell{c, j.at("a").get<double>(), j.at("b").get<double>(), j.at("angle").get<double>()};
  }
  throw Error(Errc::ParseError, "unknown cell type '" + type + "'");
}

}  // namespace detail

/// {"outer": {...}, "cells": [...], "depth": n, "seed": s}
inline nlohmann::json packing_to_json(const ShapePacking& p) {
  nlohmann::json outer;
  if (const auto* d = std::get_if<Circle>(&p.outer)) {
    outer = {{"type", "circle"}, {"center", detail::point_json(d->center)}, {"radius", d->radius}};
  } else {
    const auto& s = std::get<SquareDomain>(p.outer);
    outer = {{"type", "square"}, {"center", detail::point_json(s.center)}, {"half", s.half}};
  }
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : p.cells) cells.push_back(detail::cell_json(c));
  return {{"outer", outer}, {"cells", cells}, {"depth", p.depth}, {"seed", p.rng_seed}};
}

inline nlohmann::json packing_to_json(const DiskPacking& p) { return packing_to_json(ShapePacking::from_disks(p)); }

inline ShapePacking packing_from_json(const nlohmann::json& j) {
  try {
    ShapePacking p;
    const auto& o = j.at("outer");
    const std::string type = o.at("type").get<std::string>();
    const Point2 c = detail::json_point(o.at("center"));
    if (type == "circle") {
      p.outer = Circle(c, o.at("radius").get<double>());
    } else if (type == "square") {
      p.outer = SquareDomain{c, o.at("half").get<double>()};
    } else {
      throw Error(Errc::ParseError, "unknown outer domain type '" + type + "'");
    }
    for (const auto& cj : j.at("cells")) p.cells.push_back(detail::json_cell(cj));
    p.depth = j.value("depth", p.cells.size());
    p.rng_seed = j.value("seed", std::uint64_t{0});
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace planeset

#endif  // PLANESET_PACKING_IO_HPP
