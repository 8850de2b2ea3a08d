#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mhlab/rational.hpp"

namespace mhlab {

/// alpha*u + beta*v >= gamma, or > when strict. (u, v) = (1/p, 1/q).
struct HalfPlane {
  Rat alpha;
  Rat beta;
  Rat gamma;
  bool strict = false;
  std::string label;
  std::string dominated_by;  // label of a constraint that makes this one redundant, if known
};

/// v >= slope*u + intercept (v > ... when strict).
HalfPlane above_line(const Rat& slope, const Rat& intercept, bool strict, std::string label);

/// alpha*u + beta*v - gamma.
Rat slack(const HalfPlane& h, const Rat& u, const Rat& v);

/// Same point set: positive multiples of each other with equal strictness.
bool equivalent(const HalfPlane& a, const HalfPlane& b);

/// Image under (u, v) -> (1 - v, 1 - u); the label is kept.
HalfPlane dual(const HalfPlane& h);

struct Vertex {
  Rat u;
  Rat v;
  bool included = true;
};

struct RegionPolygon {
  std::vector<HalfPlane> constraints;  // ends with the four unit-square bounds
  std::vector<bool> active;            // constraint supports an edge of the polygon
  std::vector<Vertex> vertices;        // counterclockwise
  std::vector<std::string> annotations;
};

/// Appends the unit-square bounds and enumerates vertices of the closure.
/// Throws PreconditionError on an empty list and EmptyRegion when infeasible.
RegionPolygon build_region(std::vector<HalfPlane> constraints);

enum class Membership { Outside, Interior, BoundaryExcluded, BoundaryIncluded };

std::string to_string(Membership m);

Membership contains(const RegionPolygon& rp, const Rat& u, const Rat& v);

struct DualPair {
  std::string label;
  std::string partner;
  bool holds = false;
  HalfPlane image;  // dual of the constraint named by `label`
};

struct DualityReport {
  std::vector<DualPair> pairs;           // (c2,c3), (c5,c6), (c9,c10), self-dual c1, cdh, c4, c7 when present
  std::optional<DualPair> c12_c13;       // reported separately, never repaired
  bool closed = true;                    // every entry of `pairs` holds
};

DualityReport duality_check(const RegionPolygon& rp);

const HalfPlane* find_constraint(const RegionPolygon& rp, const std::string& label);

nlohmann::ordered_json region_to_json(const RegionPolygon& rp);
RegionPolygon region_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json halfplane_to_json(const HalfPlane& h);

/// 512x512 SVG: unit square, axes 1/p and 1/q, shaded polygon, dashed strict edges.
std::string region_svg(const RegionPolygon& rp, const std::string& title = "");

}  // namespace mhlab
