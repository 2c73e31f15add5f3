#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace swme {

/// Largest supported number of moments. Vectors and matrices below use
/// fixed-capacity storage so that per-interface work never allocates.
inline constexpr int kMaxMoments = 20;
inline constexpr int kMaxVars = kMaxMoments + 2;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxVars, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxVars, kMaxVars>;

/// Heights at or below this are treated as dry and rejected.
inline constexpr double kDryTolerance = 1e-12;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a state violates h > 0 or a model precondition.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Conserved unknowns of one cell, U = (h, h u_m, h alpha_1, ..., h alpha_N),
/// together with the bottom topography b at that point.
struct State {
    Vec u;
    double b = 0.0;

    State() = default;
    State(Vec conserved, double topography) : u(std::move(conserved)), b(topography) {}

    int moments() const { return static_cast<int>(u.size()) - 2; }
    double h() const { return u[0]; }
    double hu() const { return u[1]; }
    double halpha(int i) const { return u[1 + i]; }
};

/// Primitive variables (h, u_m, alpha_1..alpha_N).
struct Primitive {
    double h = 0.0;
    double um = 0.0;
    Vec alpha;

    int moments() const { return static_cast<int>(alpha.size()); }
};

inline void require_wet(double h, const char* where)
{
    if (!(h > kDryTolerance))
        throw InvalidState(std::string(where) + ": water height must be positive, got h=" + std::to_string(h));
}

inline Primitive to_primitive(const Vec& u)
{
    require_wet(u[0], "to_primitive");
    const int n = static_cast<int>(u.size()) - 2;
    Primitive p;
    p.h = u[0];
    p.um = u[1] / u[0];
    p.alpha = u.tail(n) / u[0];
    return p;
}

inline Vec to_conserved(const Primitive& p)
{
    const int n = p.moments();
    Vec u(n + 2);
    u[0] = p.h;
    u[1] = p.h * p.um;
    u.tail(n) = p.h * p.alpha;
    return u;
}

} // namespace swme
