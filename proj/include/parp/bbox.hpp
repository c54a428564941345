#pragma once

#include "parp/errors.hpp"

namespace parp {

// Corner-form box: top-left (x1,y1) and bottom-right (x2,y2), continuous
// pixel coordinates. Construction enforces x1 < x2, y1 < y2, all finite
// and >= 0, so downstream geometry never sees a degenerate box.
struct BBoxXYXY {
  double x1;
  double y1;
  double x2;
  double y2;

  BBoxXYXY(double x1_, double y1_, double x2_, double y2_);

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  bool operator==(const BBoxXYXY&) const = default;
};

// Center-form box: center (x,y) with extents (w,h). w > 0, h > 0, finite.
struct BBoxXYWH {
  double x;
  double y;
  double w;
  double h;

  BBoxXYWH(double x_, double y_, double w_, double h_);

  bool operator==(const BBoxXYWH&) const = default;
};

// Mutually inverse conversions between the two forms. Round-trip is
// identity to within 1e-9 absolute. to_xyxy throws ValidationError when
// the center form spills below zero.
BBoxXYXY to_xyxy(const BBoxXYWH& b);
BBoxXYWH to_xywh(const BBoxXYXY& b);

}  // namespace parp
