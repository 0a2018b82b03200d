#ifndef RICEFIELD_RICE_HPP
#define RICEFIELD_RICE_HPP

#include "ricefield/domain.hpp"
#include "ricefield/spectral.hpp"

#include <array>
#include <cstdint>

namespace ricefield {

/// Value of a Rice integral (or conditional determinant moment) with its
/// Monte Carlo standard error; std_error is 0 for closed forms.
struct RiceEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long n_inner_mc = 0;
    bool has_breakdown = false;
    double interior = 0.0, boundary = 0.0;
    int skipped_nodes = 0;
};

/// Conditional law of the Hessian given {X(t)=u, X'(t)=0} for a
/// stationary isotropic 2-d field, together with the conditioning
/// density p_{X,X'}(u, 0).  Entry order for the covariance operator is
/// (H_ss, H_tt, H_st).
struct ConditionalGaussian {
    Sym2 mean_matrix;
    std::array<std::array<double, 3>, 3> cov_operator{};
    double conditioning_density = 0.0;
};

enum class DetKind { delta1, delta2 }; // |det M| 1{M<0}  vs  |det M|

/// Expected number of u-level crossings of a centered stationary process
/// on [0,T]: (T/pi) sqrt(lambda2/lambda0) exp(-u^2/(2 lambda0)).
double rice_d1_closed_form(double lambda0, double lambda2, double u, double T);

ConditionalGaussian build_conditional_law(const SpectralModel& model, double u);
ConditionalGaussian build_conditional_law(const SpectralMoments& moments, double u);

/// Mean of delta^1 or delta^2 over the conditional Hessian law, by
/// antithetic Monte Carlo over symmetric matrices.
RiceEstimate conditional_det_moment(const ConditionalGaussian& cond, DetKind kind,
                                    long n_mc, std::uint64_t seed);

/// E(M_{u,i}(I)) via the level integral over (u, inf) with the
/// conditional law rebuilt per quadrature node.
RiceEstimate expected_critical(const SpectralModel& model, const Domain& domain,
                               double u, DetKind kind, long n_mc,
                               std::uint64_t seed = 20240101);

/// Second factorial moment E[N(N-1)] of u-crossings of a 1-d process on
/// [0,T]: tensor quadrature over the square with a diagonal exclusion,
/// conditional pair law by Gaussian regression from Gamma.
RiceEstimate factorial_moment_2_d1(const SpectralModel& model, double T, double u,
                                   int n_quad, long n_mc,
                                   std::uint64_t seed = 20240102);

} // namespace ricefield

#endif
