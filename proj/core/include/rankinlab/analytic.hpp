#pragma once
// Complex special functions and exact L-value arithmetic: Gamma, zeta,
// Hurwitz zeta, Dirichlet L, numeric derivatives, Bernoulli machinery.
//
// Accuracy targets: Gamma >= 12 significant digits (Stirling series after a
// shift to Re >= 12, reflection for Re < 1/2); zeta/Hurwitz >= 10 digits for
// |s| <= 30 (Euler-Maclaurin, shift 20 terms, correction order 12).

#include <complex>
#include <functional>
#include <boost/multiprecision/cpp_int.hpp>

#include "rankinlab/numthy.hpp"

namespace rankinlab::analytic {

using Complex = std::complex<double>;
using ExactRational = boost::multiprecision::cpp_rational;

Complex gamma_c(Complex s);   // rejects non-positive integer s
Complex lgamma_c(Complex s);  // principal branch, Re s > 0 required
double digamma_real(double x);

Complex zeta_c(Complex s);                               // s != 1
Complex hurwitz_zeta(Complex s, double x);               // x in (0,1], s != 1
Complex hurwitz_zeta(Complex s, int64_t num, int64_t den);

// L(s, chi); pole of L(s, 1_N) at s = 1 rejected.  Computed through the
// primitive character (Hurwitz sums) with Euler factors reinserted.
Complex dirichlet_L(Complex s, const numthy::DirichletCharacter& chi);

// Exact Bernoulli numbers B_n (B_1 = -1/2) and polynomials B_k(x), cached.
const ExactRational& bernoulli_number(int n);
// Coefficients of B_k(x), ascending powers; k <= 16 precomputed and cached.
const std::vector<ExactRational>& bernoulli_poly(int k);
ExactRational bernoulli_poly_at(int k, const ExactRational& x);

// Generalized Bernoulli number B_{k,chi} = f^{k-1} sum_a chi(a) B_k(a/f) for
// the primitive character attached to chi (quadratic or trivial), exact.
ExactRational generalized_bernoulli(int k, const numthy::DirichletCharacter& chi);

// L(1-k, chi~) = -B_{k,chi}/k, exact; 0 exactly on parity mismatch.
ExactRational L_special_exact(int k, const numthy::DirichletCharacter& chi);

// d/ds f at s0: central difference with one Richardson step.
Complex log_derivative(const std::function<Complex(Complex)>& f, Complex s0, double h = 1e-4);

}  // namespace rankinlab::analytic
