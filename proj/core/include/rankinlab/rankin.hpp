#pragma once
// Rankin-Selberg convolutions, residues, asymptotic verification, and
// Petersson scalar products (closed-form and numeric-integration oracle).
//
// Residues come from closed forms (xi, U, L-values), never from divergent
// continuations; empirical convergence is checked through coefficient
// partial sums on a geometric grid.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankinlab/eisen.hpp"
#include "rankinlab/forms.hpp"

namespace rankinlab::rankin {

using forms::Cusp;
using forms::FourierSeries;
using forms::HalfIntWeight;
using numthy::DirichletCharacter;
using std::int64_t;

struct AsymptoticReport {
    std::vector<double> grid;        // strictly increasing X values
    std::vector<double> sums;        // sum_{n<=X} a_n conj(b_n)
    std::vector<double> predicted;   // C X^alpha / alpha
    std::vector<double> ratios;
    double fitted_exponent = 0.0;    // log-log least squares
    double final_ratio = 0.0;
};

struct PeterssonResult {
    Complex value{0.0, 0.0};
    std::string method;              // residue-formula | vl-sp | numeric-integration
    double error_estimate = 0.0;
};

// sum_{n<=X} a_n conj(b_n) n^{-s}
Complex l_partial(const FourierSeries& f, const FourierSeries& g, Complex s, int64_t X);

// Residue of L(s; f, g) at its rightmost pole, from cusp data.
//  - l != l': the constant-term formula with xi^{(r)}(l') (integral even
//    weight difference).
//  - l = l' = 1, principal rho: the double-pole limit lim s^2 L(1+s).
//  - l = l' != 1, principal rho: residue at s = l from the weight-0
//    Eisenstein pole; requires the Petersson product of f and g.
Complex predicted_residue_general(const FourierSeries& f, const FourierSeries& g,
                                  HalfIntWeight l, HalfIntWeight lp,
                                  const DirichletCharacter& rho, int64_t N,
                                  std::optional<Complex> petersson = std::nullopt);

// Res_{s=2l-k-1} L(s; f, g) for even k (cusp sum over C_0(N)).
Complex predicted_residue_ctk(const FourierSeries& f, const FourierSeries& g,
                              HalfIntWeight l, int k, int64_t N);
// Level-4 odd-k family (pole at s = 2l-k-1 through the chi_{-4} constant term).
Complex predicted_residue_oddk_N4(const FourierSeries& f, const FourierSeries& g,
                                  HalfIntWeight l, int k);
// Level-4 half-integral family (pole at s = 2l-k-3/2).
Complex predicted_residue_halfk_N4(const FourierSeries& f, const FourierSeries& g,
                                   HalfIntWeight l, int k);

// Displayed asymptotic constants for theta-power pairs.
double wagon_constant(int k);                    // sum r_k(n)^2
double mixed_constant_4m(int k, int m);          // sum r_k(n) r_{k-4m}(n)
double mixed_constant_2m_odd(int k, int m);      // sum r_k(n) r_{k-2m}(n), m odd
double mixed_constant_m_odd(int k, int m);       // sum r_k(n) r_{k-m}(n), m odd

// Partial sums of a_n b_n against C X^alpha / alpha over a geometric grid.
AsymptoticReport asymptotic_report(const std::vector<double>& a, const std::vector<double>& b,
                                   double alpha, double C, const std::vector<double>& x_grid);
std::vector<double> geometric_grid(double x_max, int points = 8, double ratio = 2.0);

// <f,g> = 3^{-1} 4^{-l} pi^{-l+1} Gamma(l) N prod(1+1/p) * residue; l != 1.
PeterssonResult psp_via_residue(HalfIntWeight l, int64_t N, Complex residue);

// Generic evaluator of the scalar-product-from-cusp-data identity:
// <F, E(.,0)> = -sum_r c^(r) w^(r) d/ds conj(xi^(r))(0), with the consistency
// precondition b = sum_r c^(r) w^(r) conj(xi^(r))(0).
struct VlSpInput {
    std::vector<Complex> constants;                          // c^(r)
    std::vector<std::function<Complex(Complex)>> xi_family;  // s -> xi^(r)(s)
    std::vector<int64_t> widths;
    Complex b{0.0, 0.0};
};
PeterssonResult psp_vl_sp(const VlSpInput& input, double consistency_tol = 1e-8);

// <theta^{2k+1}, theta^{2k+1}> on Gamma_0(4) through the scalar products of
// the two level-4 Eisenstein families (closed forms for k <= 1, the generic
// evaluator for k >= 2).
PeterssonResult theta_power_petersson(int k);

// Truncated-fundamental-domain quadrature for <f,g> at level 4.
PeterssonResult psp_numeric(const FourierSeries& f, const FourierSeries& g,
                            HalfIntWeight l, double T = 8.0, double tol = 1e-4);

}  // namespace rankinlab::rankin
