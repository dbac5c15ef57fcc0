#pragma once

namespace stylegenes {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

}  // namespace stylegenes
