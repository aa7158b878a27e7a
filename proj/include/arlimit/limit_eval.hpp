#pragma once

#include <vector>

#include "arlimit/model.hpp"

namespace arlimit {

/// Absolute distance |lambda_j - lambda_l| below which two roots are treated
/// as coalesced and the residue formula is abandoned.
inline constexpr double kClusterTol = 1e-7;

struct LimitOptions {
    double cluster_tol = kClusterTol;
    double realness_tol = kRealnessTol;
};

/// Residue coefficients C_j at the poles t = 1/lambda_j, aligned with the
/// input root order.
struct ResidueSet {
    std::vector<Complex> c;
};

/// Groups roots by transitive proximity (|lambda_a - lambda_b| <= tol).
/// Clusters are ordered by their smallest member index.
std::vector<RootCluster> cluster_roots(const RootMultiset& roots, double cluster_tol);

/// lambda^n by repeated squaring; exact for n = 0 (returns 1, also at 0).
Complex ipow(Complex lambda, unsigned n) noexcept;

/**
 * C_j = lambda_j^{k-1} prod_{l != j} (1 - lambda_l^2) / ((lambda_j - lambda_l)(1 - lambda_j lambda_l)).
 *
 * Throws NonStationary, or ClusteredRoots when two roots are within
 * cluster_tol (the confluent path must be used then).
 */
ResidueSet residue_coefficients(const RootMultiset& roots, double cluster_tol = kClusterTol);

/**
 * The limit A = lim (1/n) sum_{i in [1,n]^k} prod_p lambda_p^{|i_p - i_{p+1} - s_p|},
 * which depends on the shifts only through S = |sum s_p| and equals
 * sum_j lambda_j^S C_j for distinct roots.
 *
 * Clustered input is delegated to limit_A_confluent(). Conjugate-closed
 * input has its imaginary part certified and dropped into real_value.
 */
EvalResult limit_A(const RootMultiset& roots, unsigned S, const LimitOptions& options = {});

/**
 * Limit of the distinct-root formula as clustered roots coalesce.
 *
 * Evaluated as the t^S Laurent coefficient of the product form of F(t) by
 * the trapezoid rule on a circle inside the annulus. The product form has no
 * difficulty with repeated poles, so every multiplicity pattern takes the
 * same path. Cluster structure under cluster_tol is reported in the result.
 */
EvalResult limit_A_confluent(const RootMultiset& roots, unsigned S,
                             const LimitOptions& options = {});

/// Generating function F(t) = sum_S B_S t^S in product form:
///   prod_l ( 1/(1 - t lambda_l) + (lambda_l/t)/(1 - lambda_l/t) ).
/// Requires max|lambda| < |t| < 1/max|lambda|; throws OutsideAnnulus.
Complex F_eval(const RootMultiset& roots, Complex t);

/// Same as F_eval without the annulus check. For callers that have placed t
/// themselves.
Complex F_product(std::span<const Complex> roots, Complex t) noexcept;

/// Radius used for contour extraction. F is invariant under t -> 1/t, so the
/// unit circle sits in the log-middle of the annulus and aliasing from both
/// sides decays like max|lambda|^N. Always 1; kept as a function so callers
/// do not hard-code it.
double contour_radius(const RootMultiset& roots) noexcept;

/// Smallest power-of-two point count (>= 2(S+8), >= 64) whose aliasing
/// error estimate falls below double precision for these roots.
int contour_points_for(const RootMultiset& roots, unsigned S);

/**
 * Trapezoid-rule Laurent coefficient
 *   (1/N) sum_q F(r w^q) (r w^q)^{-S},  w = exp(2 pi i / N).
 * No stationarity or realness handling; see contour_coefficient() for the
 * validated oracle.
 */
Complex laurent_coefficient(const RootMultiset& roots, unsigned S, int num_points, double radius);

}  // namespace arlimit
