#pragma once
// Modular-form data: theta series and twists, representation numbers of
// diagonal quadratic forms, cusp systems of Gamma_0(N), and pointwise
// evaluation of theta powers on the upper half-plane.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "rankinlab/numeric_value.hpp"
#include "rankinlab/numthy.hpp"

namespace rankinlab::forms {

using numthy::DirichletCharacter;
using std::int64_t;

struct HalfIntWeight {
    int twice_weight = 0;  // weight = twice_weight / 2
    bool is_integral() const { return twice_weight % 2 == 0; }
    double value() const { return twice_weight / 2.0; }
    friend bool operator==(HalfIntWeight a, HalfIntWeight b) {
        return a.twice_weight == b.twice_weight;
    }
};

struct Cusp {
    int64_t i = 1;  // numerator
    int64_t M = 1;  // denominator, M | N
    friend bool operator==(const Cusp& a, const Cusp& b) { return a.i == b.i && a.M == b.M; }
    friend bool operator<(const Cusp& a, const Cusp& b) {
        return a.M != b.M ? a.M < b.M : a.i < b.i;
    }
};

struct CuspSystem {
    int64_t level = 1;
    std::vector<Cusp> cusps;
    std::vector<int64_t> widths;                      // w^{(i/M)} = N/(M^2, N)
    std::vector<std::array<int64_t, 4>> scaling;      // A_r in SL2(Z), A_r(inf) = i/M

    int64_t index_of(const Cusp& c) const;
    int64_t width_of(const Cusp& c) const { return widths[index_of(c)]; }
};

// Representatives per Gamma_0(N)-orbit of P^1(Q), chosen in the i/M shape,
// computed by orbit reduction on P^1(Z/N).
CuspSystem cusp_system(int64_t N);

// Reduce a rational cusp a/c (c = 0 means infinity) to its representative.
Cusp cusp_reduce(int64_t a, int64_t c, int64_t N);
bool cusp_equivalent(int64_t a1, int64_t c1, int64_t a2, int64_t c2, int64_t N);

struct DiagonalQuadraticForm {
    std::vector<int64_t> coeffs;  // sum c_i x_i^2, all c_i >= 1
};

// Exact r_Q(0..n_max) by nested bounded lattice enumeration; r_Q(0) = 1.
std::vector<int64_t> rep_numbers(const DiagonalQuadraticForm& Q, int64_t n_max);

// r_k(0..n_max) tables (k-fold convolution of the square-indicator series).
std::vector<int64_t> theta_power_table(int k, int64_t n_max);       // throws on overflow
std::vector<double> theta_power_table_real(int k, int64_t n_max);

// Lazily generated, cached coefficient stream for a modular form.
class FourierSeries {
  public:
    FourierSeries(int64_t level, HalfIntWeight weight,
                  std::optional<DirichletCharacter> character,
                  std::function<NumericValue(int64_t)> provider,
                  std::map<Cusp, Complex> cusp_constants);

    int64_t level() const { return level_; }
    HalfIntWeight weight() const { return weight_; }
    const std::optional<DirichletCharacter>& character() const { return character_; }

    NumericValue coefficient(int64_t n) const;  // memoized
    Complex a(int64_t n) const { return coefficient(n).to_complex(); }

    const std::map<Cusp, Complex>& cusp_constants() const { return cusp_constants_; }
    Complex cusp_constant(const Cusp& c) const;

    // c * f (coefficients and cusp constants scaled) -- used by covariance checks.
    FourierSeries scaled(Complex c) const;

  private:
    int64_t level_;
    HalfIntWeight weight_;
    std::optional<DirichletCharacter> character_;
    std::function<NumericValue(int64_t)> provider_;
    std::map<Cusp, Complex> cusp_constants_;
    mutable std::vector<std::optional<NumericValue>> cache_;
    mutable std::mutex mutex_;
};

// theta^k: level 4, weight k/2, character chi_{-4}^{floor(k/2)};
// cusp constants {inf: 1, 0: 2^{-k/2} e(-k/8), 1/2: 0}.
FourierSeries theta_series(int k);

// theta_chi (chi even) and Theta_chi (chi odd): coefficients supported on
// squares, 2*chi(n) resp. 2*chi(n)*n at m = n^2.
FourierSeries theta_twist(const DirichletCharacter& chi);
FourierSeries theta_twist_odd(const DirichletCharacter& chi);

// theta(z)^k with relative error <= 1e-10; q-series plus the inversion
// theta(-1/(4z)) = sqrt(-2iz) theta(z) to shuttle toward large Im z.
Complex eval_theta_pow(int k, Complex z);
Complex eval_theta(Complex z);

}  // namespace rankinlab::forms
