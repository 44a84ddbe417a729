#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "czhardy/hardy.hpp"

namespace czhardy {

// Dense kernel in the mu-convention: (Tf)(x) = sum_y K(x,y) f(y) mu(y).
// A symmetric kernel is exactly self-adjointness on L^2(mu).
struct OperatorMatrix {
    Eigen::MatrixXd kernel;
};

Eigen::VectorXd to_vector(const TreeFunction& f);
Eigen::VectorXd mu_vector(const WeightedMeasure& mu);
Eigen::VectorXd apply(const OperatorMatrix& T, const WeightedMeasure& mu,
                      const Eigen::VectorXd& f);
double l1_norm(const Eigen::VectorXd& f, const WeightedMeasure& mu);
double inner_mu(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const WeightedMeasure& mu);

// Distinguished Laplacian L = I - (2 sqrt q)^-1 M with M(x,y) = q^((l(y)-l(x))/2)
// on edges, Dirichlet-truncated: neighbors outside the truncation are absent.
OperatorMatrix laplacian(const TreeTruncation& tree, const WeightedMeasure& mu);

// Conjugated matrix D^(1/2) L D^(-1/2) = I - A/(2 sqrt q), A the 0/1 adjacency.
Eigen::MatrixXd symmetrized_laplacian(const TreeTruncation& tree);

OperatorMatrix identity_kernel(const TreeTruncation& tree, const WeightedMeasure& mu);

// Pointwise gradient (grad f)(x) = sum_{y ~ x} |f(y) - f(x)|.
TreeFunction gradient(const TreeFunction& f);
Eigen::VectorXd gradient(const TreeTruncation& tree, const Eigen::VectorXd& f);

// Eigendecomposition of the symmetrized Laplacian; all spectral calculus
// (multipliers, inverse square root, Riesz transform) runs through it.
class SpectralSystem {
  public:
    SpectralSystem(const TreeTruncation& tree, const WeightedMeasure& mu);

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    double min_eigenvalue() const { return evals_(0); }
    double max_eigenvalue() const { return evals_(evals_.size() - 1); }

    // Kernel of M(L) in the mu-convention: (V M V^T)(x,y) / sqrt(mu(x) mu(y)).
    OperatorMatrix multiplier_kernel(const std::function<double(double)>& M) const;
    Eigen::VectorXd apply_multiplier(const std::function<double(double)>& M,
                                     const Eigen::VectorXd& f) const;
    // grad L^(-1/2) f; the truncated spectrum is strictly positive.
    Eigen::VectorXd riesz(const Eigen::VectorXd& f) const;

    const TreeTruncation& tree() const { return *tree_; }

  private:
    const TreeTruncation* tree_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
    Eigen::VectorXd sqrt_mu_, inv_sqrt_mu_;
};

// Named multipliers for the experiment suite.
std::function<double(double)> heat_multiplier(double time);
std::function<double(double)> power_multiplier(int m);  // (1 - lambda/2)^m
std::function<double(double)> imaginary_power_real(double s0);
std::function<double(double)> imaginary_power_imag(double s0);
std::function<double(double)> make_multiplier(const std::string& name, double param);

// Hormander integral: sum over x outside the dilate of |K(x,y) - K(x,z)| mu(x)
// for y, z in the CZ set; throws when y or z is outside or the dilate leaks
// past the truncation.
double hormander_integral(const OperatorMatrix& T, const WeightedMeasure& mu, const CZSet& S,
                          Vertex y, Vertex z);

struct HormanderSweep {
    double sup = 0;
    std::uint32_t root = 0;
    long h = 0;
    std::uint32_t y = 0, z = 0;
    std::size_t sets = 0;
    std::size_t pairs = 0;
};

// Exhaustive sup over every CZ set with fully interior dilate and every pair
// inside it.
HormanderSweep hormander_sweep(const OperatorMatrix& T, const TreeTruncation& tree,
                               const WeightedMeasure& mu);

struct AtomApplyReport {
    double max_l1 = 0;      // max_a ||Ta||_1
    double max_inside = 0;  // Cauchy-Schwarz piece over the dilate
    double max_tail = 0;    // Hormander piece against the base point
    std::size_t atoms = 0;
};

AtomApplyReport h1_to_l1_ratio(const OperatorMatrix& T, const WeightedMeasure& mu,
                               const std::vector<Atom>& atoms);
// Variant for operators given by their action only (e.g. the Riesz transform).
AtomApplyReport h1_to_l1_ratio(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& T,
                               const WeightedMeasure& mu, const std::vector<Atom>& atoms);

// Grid maximum over dyadic t in [2^-6, 2^6] of the discrete W^s_2 norm of
// (D_t M) phi, phi a fixed bump on [1/2, 4].  A diagnostic estimator only.
struct MikhlinReport {
    double grid_max = 0;
    bool outside_hypothesis = false;  // s <= 3/2
    std::size_t samples = 0;
    std::vector<std::pair<double, double>> per_t;
};

MikhlinReport mikhlin_hormander_estimate(const std::function<double(double)>& M, double s,
                                         std::size_t samples = 4096);

}  // namespace czhardy
