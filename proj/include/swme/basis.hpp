#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swme/quadrature.hpp"
#include "swme/types.hpp"

namespace swme {

/// Scaled Legendre ansatz functions on the mapped vertical coordinate
/// zeta in [0, 1]:  phi_j(zeta) = 1/j! d^j/dzeta^j (zeta - zeta^2)^j,
/// which equals P_j(1 - 2 zeta). phi_0 = 1 and
/// int_0^1 phi_m phi_n dzeta = delta_mn / (2n + 1).
class BasisSet {
public:
    explicit BasisSet(int order);

    int order() const { return order_; }

    double phi(int j, double zeta) const;
    double dphi(int j, double zeta) const;
    /// int_0^zeta phi_j
    double phi_integral(int j, double zeta) const;

    /// Exact integer monomial coefficients c_k of phi_j = sum_k c_k zeta^k,
    /// c_k = (-1)^k binom(j,k) binom(j+k,k).
    const std::vector<std::int64_t>& monomial_coefficients(int j) const;

    /// Gauss-Legendre rule exact for triple products of degree-N polynomials.
    const QuadratureRule& rule() const { return rule_; }

private:
    void check_index(int j) const;

    int order_;
    std::vector<std::vector<std::int64_t>> monomials_;
    QuadratureRule rule_;
};

/// Moment tensors of the general SWME, indices 1..N stored zero-based
/// (entry [i-1][j-1][k-1]).
///   A_ijk = (2i+1) int phi_i phi_j phi_k
///   B_ijk = (2i+1) int phi_i' (int_0^zeta phi_j) phi_k
///   C_ij  = int phi_i' phi_j'
class MomentTensors {
public:
    MomentTensors() = default;
    explicit MomentTensors(int order);

    int order() const { return order_; }
    double A(int i, int j, int k) const { return a_[index(i, j, k)]; }
    double B(int i, int j, int k) const { return b_[index(i, j, k)]; }
    double C(int i, int j) const { return c_[(i - 1) * order_ + (j - 1)]; }

private:
    friend MomentTensors compute_moment_tensors(const class BasisSet& basis);

    std::size_t index(int i, int j, int k) const
    {
        return (static_cast<std::size_t>(i - 1) * order_ + (j - 1)) * order_ + (k - 1);
    }

    int order_ = 0;
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<double> c_;
};

MomentTensors compute_moment_tensors(const BasisSet& basis);

struct ProfileCoefficients {
    double um = 0.0;
    Vec alpha;
};

/// Projects a vertical velocity profile onto the basis:
///   u_m = int_0^1 u0,  alpha_i = (2i+1) int_0^1 u0 phi_i.
/// Uses globally adaptive Gauss quadrature, so profiles with endpoint
/// singularities in their derivatives (sqrt(zeta)) are fine.
ProfileCoefficients project_profile(const std::function<double(double)>& profile, const BasisSet& basis,
                                    double tol = 1e-13);

/// Reconstructs u(zeta) = u_m + sum_j alpha_j phi_j(zeta).
double evaluate_profile(const ProfileCoefficients& coeffs, const BasisSet& basis, double zeta);

/// Coupling constant of the bottom-slip friction term for moment row m and
/// coefficient j, equal to C_mj / 4: zero when m + j is odd, otherwise
/// min(m, j) (min(m, j) + 1) / 2.
double friction_coupling(int m, int j);

/// Newtonian friction term with slip length `slip` and kinematic viscosity
/// `viscosity`, returned in conserved-variable ordering:
///   P_mass = 0
///   P_mom  = -(nu/lambda) (u_m + sum_j alpha_j)
///   P_m    = -(2m+1) (nu/lambda) (u_m + sum_j alpha_j) - (2m+1)(nu/h) sum_j C_mj alpha_j
Vec friction_source(const State& state, double viscosity, double slip);

} // namespace swme
