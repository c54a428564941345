#include "parp/bbox.hpp"

#include <cmath>
#include <string>

namespace parp {

namespace {

bool all_finite(double a, double b, double c, double d) {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
         std::isfinite(d);
}

}  // namespace

BBoxXYXY::BBoxXYXY(double x1_, double y1_, double x2_, double y2_)
    : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
  if (!all_finite(x1, y1, x2, y2)) {
    throw ValidationError("bbox coordinates must be finite");
  }
  if (x1 < 0.0 || y1 < 0.0) {
    throw ValidationError("bbox coordinates must be >= 0");
  }
  if (!(x1 < x2) || !(y1 < y2)) {
    throw ValidationError("malformed bbox: requires x1 < x2 and y1 < y2, got (" +
                          std::to_string(x1) + ", " + std::to_string(y1) +
                          ", " + std::to_string(x2) + ", " +
                          std::to_string(y2) + ")");
  }
}

BBoxXYWH::BBoxXYWH(double x_, double y_, double w_, double h_)
    : x(x_), y(y_), w(w_), h(h_) {
  if (!all_finite(x, y, w, h)) {
    throw ValidationError("bbox coordinates must be finite");
  }
  if (!(w > 0.0) || !(h > 0.0)) {
    throw ValidationError("bbox extents must be positive");
  }
}

BBoxXYXY to_xyxy(const BBoxXYWH& b) {
  return BBoxXYXY(b.x - b.w / 2.0, b.y - b.h / 2.0, b.x + b.w / 2.0,
                  b.y + b.h / 2.0);
}

BBoxXYWH to_xywh(const BBoxXYXY& b) {
  return BBoxXYWH((b.x1 + b.x2) / 2.0, (b.y1 + b.y2) / 2.0, b.x2 - b.x1,
                  b.y2 - b.y1);
}

}  // namespace parp
