#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "swme/types.hpp"

namespace swme {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule gauss_legendre_unit(int points);

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Globally adaptive composite Gauss-Legendre integration of f over [a, b].
/// Each segment's error is estimated by comparing one 10-point panel with two
/// half panels; the worst segment is bisected until the summed estimate is
/// below `tol`. Throws QuadratureError with the achieved estimate otherwise.
/// `max_depth` caps the number of segments at 2^min(max_depth, 16).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                          int max_depth = 60);

} // namespace swme
