#pragma once

/// @file decision.hpp
/// @brief Analytic decision boundary of a classifier from its membership
/// skeletons, and point-in-polygon classification.

#include <span>
#include <vector>

#include "plskel/skeleton.hpp"

namespace plskel {

struct MembershipPolygon {
  Polygon polygon;
  int class_index = 0;
};

/// Piece of the decision boundary between two classes (class_a < class_b).
struct BoundarySegment {
  Point from;
  Point to;
  int class_a = 0;
  int class_b = 0;
};

struct DecisionMap {
  Hyperrectangle bounds;
  int num_classes = 0;
  /// Built from a single logit thresholded at zero (class 1 where f > 0).
  bool single_logit = false;
  std::vector<MembershipPolygon> polygons;
  std::vector<BoundarySegment> boundary;
};

struct PairSplit {
  std::vector<Polygon> pos;  ///< fi >= fj
  std::vector<Polygon> neg;  ///< fi <= fj
};

/// Splits a region along the zero set of fi - fj.
PairSplit split_region_by_pair(const Polygon& region, const Affine& fi, const Affine& fj);

/// Membership polygons and decision boundary of the argmax over fs.
/// Skeletons with different tessellations are first refined to their common
/// tessellation. A single skeleton is read as a binary logit: class 1 where
/// it is positive, class 0 elsewhere.
DecisionMap extract_decision_map(std::span<const Skeleton> fs);

/// Class of the polygon containing x; boundary points get the lowest class
/// among the touching polygons. Throws OutOfDomain outside the bounds.
int classify(const DecisionMap& dm, Point x);

}  // namespace plskel
