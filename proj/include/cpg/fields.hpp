#pragma once

// A smooth scalar field with the analytic derivatives the projection and
// the error metrics consume.

#include <functional>

namespace cpg {

struct SmoothField2D {
    std::function<double(double, double)> u;
    std::function<double(double, double)> ux, uy;
    std::function<double(double, double)> uxx, uyy, uxy;
};

}  // namespace cpg
