#pragma once
// Eisenstein-series coefficient formulas: integral-weight constant terms and
// U-factors; the half-integral-weight Fourier-coefficient engine with all
// local factors; the N=4 holomorphic specializations and the theta-power
// identity.
//
// Every case analysis is branch-tagged so oracle mismatches identify the
// branch.  The level-4 engine at s=0 runs in exact Gaussian-rational
// arithmetic; the correction constant mixing the two Eisenstein families was
// calibrated against the representation-number oracle (see scriptE_kappa).

#include <map>
#include <string>

#include "rankinlab/analytic.hpp"
#include "rankinlab/forms.hpp"
#include "rankinlab/numeric_value.hpp"
#include "rankinlab/numthy.hpp"

namespace rankinlab::eisen {

using numthy::DirichletCharacter;
using std::int64_t;

struct EisensteinSpec {
    int k = 0;
    DirichletCharacter rho;
    int64_t M = 1;
    int64_t N = 1;
    bool half_integral = false;
};

struct LocalFactorResult {
    Complex value{0.0, 0.0};
    std::string branch;
};

// ---- integral-weight constant terms -------------------------------------

// xi^{(i/M)}(s) for y^s E_{0,1_N,N}(z,s); pole at s = 1 rejected.
Complex xi_weight0(int64_t N, int64_t M, Complex s);
// Common residue of all xi^{(i/M)} at s = 1: 3 / (pi N prod_{p|N} (1+1/p)).
double xi_weight0_residue(int64_t N);
// Numerical residue via Richardson extrapolation of (s-1) xi(s).
Complex xi_residue_numeric(int64_t N, int64_t M, double eps = 1e-6);
// xi^{(i/M)}(s) for y^s E_{k,1_N,N}(z,s), k >= 0 even; reduces to
// xi_weight0 at k = 0.
Complex xi_weight_k(int64_t N, int k, int64_t M, Complex s);

// ---- U-factors ------------------------------------------------------------

struct UFactors {
    Complex leading;
    std::map<int64_t, Complex> by_divisor;
};
UFactors u0_factors(int64_t N, Complex s);
UFactors u_factors_integral(int k, const DirichletCharacter& rho, Complex s);
UFactors u_factors_half(int k, const DirichletCharacter& rho, Complex s);

// ---- half-integral machinery ----------------------------------------------

// psi_n = primitive character of (conj(rho) * chi_n); n != 0.
DirichletCharacter psi_n(const DirichletCharacter& rho, int64_t n);

// f_{k,s,rho}(n,p): local factor at p (odd v_p split per the definition,
// empty second sum at v_p(n) = 0).
LocalFactorResult f_local(int k, Complex s, const DirichletCharacter& rho, int64_t n, int64_t p);

// f^{(r)}_{k,s,rho}(n,p): the p = 2 case analysis ({psi_n}_2 in
// {1_2, chi_-4, chi_{+-8}} x parity of v_2(n); rho_2 real), and the odd
// p | f_{rho_r} case.
LocalFactorResult f_local_r(int k, Complex s, const DirichletCharacter& rho, int64_t n, int64_t p);

// c''_{k,s,rho,N}(n), including n = 0.
Complex c_double_prime(int k, Complex s, const DirichletCharacter& rho, int64_t N, int64_t n);
// The 2-adic factor c^{(2)}, the complex part c^{(c)}, the real part c^{(r)}.
Complex c2_factor(int k, Complex s, const DirichletCharacter& rho, int64_t N, int64_t n);
Complex c_c_factor(int k, Complex s, const DirichletCharacter& rho, int64_t N, int64_t n);
Complex c_r_factor(int k, Complex s, const DirichletCharacter& rho, int64_t N, int64_t n);
// Full coefficient c_{k,s,rho,N}(n) = c2 * c_c * c_r * c''; computes both the
// factored product and a fused form and checks they agree.
Complex c_full(int k, Complex s, const DirichletCharacter& rho, int64_t N, int64_t n);

// Accepts only (rho, N) in the normalized shape rho = rho~ 1_2,
// N = lcm(4, f_rho); returns the scale m reducing (rho', N') to it.
struct NormalizedSpec {
    DirichletCharacter rho;
    int64_t N;
    int64_t scale;  // E_{k+1/2,rho',N'}(z,s) = E_{k+1/2,rho,N}(scale * z, s)
};
NormalizedSpec normalize_half_spec(const DirichletCharacter& rho, int64_t N);

// ---- N = 4 specialization (rho = chi_{-4}^k) -------------------------------

// alpha_k(n,2): three-branch dyadic closed form, with the branch tag.
struct AlphaResult {
    ExactRational value;
    std::string branch;
};
AlphaResult alpha_k2(int k, int64_t n);

// n-th coefficient of E_{k+1/2,chi_{-4}^k}(z,0), k >= 1, n >= 1 (exact).
NumericValue eis_half_coeff_N4_s0(int k, int64_t n);

// Correction constant of the holomorphic projection: theta^{2k+1}'s
// coefficients are [c2(n) - kappa_k] c''(n) w_n.  kappa_k was calibrated
// against the lattice oracle; it equals the displayed c2(0) c_r(0) only for
// k <= 1.
GaussianRational scriptE_kappa(int k);

// n-th coefficient of the holomorphic combination (theta^{2k+1} for k <= 3),
// exact rational; n = 0 gives 1.
NumericValue scriptE_coeff(int k, int64_t n);

// ---- cusp data of the level-4 half-integral Eisenstein family -------------

// xi^{(1/4)}, xi^{(1/2)} = 0, xi^{(0)} of y^s E_{k+1/2,chi_{-4}^k}(z,s).
Complex xi_half_quarter(int k, Complex s);
Complex xi_half_half(int k, Complex s);
Complex xi_half_zero(int k, Complex s);

}  // namespace rankinlab::eisen
