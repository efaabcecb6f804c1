#pragma once
// Integer and Dirichlet-character arithmetic: factorization, multiplicative
// functions, Kronecker symbols, character groups, Gauss sums.
//
// Character values are stored as exact root-of-unity exponents (k/order) and
// materialized to complex<double> on demand, so quadratic characters stay
// exact (+1/-1/0) throughout.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rankinlab::numthy {

using std::int64_t;
using Complex = std::complex<double>;

struct PrimePower {
    int64_t prime;
    int exponent;
};
using Factorization = std::vector<PrimePower>;

// Trial division with a 2-3-5 wheel; inputs are desk-scale (< 2^63).
Factorization factor(int64_t n);

int64_t euler_phi(int64_t n);
int mobius(int64_t n);
int64_t radical(int64_t n);
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
int valuation(int64_t n, int64_t p);  // v_p(n), n != 0
std::vector<int64_t> divisors(int64_t n);
bool is_prime(int64_t n);

// Kronecker symbol (a|n), extended to all integers n.
int kronecker_symbol(int64_t a, int64_t n);

// Signed squarefree core of a, and the discriminant of Q(sqrt(a)).
// fundamental_discriminant(square) == 1.
int64_t squarefree_core(int64_t a);
int64_t fundamental_discriminant(int64_t a);

class DirichletCharacter {
  public:
    DirichletCharacter() = default;

    // Table constructor: exps[i] in [0, order) gives chi(i) = e(exps[i]/order),
    // exps[i] == -1 means chi(i) = 0. Caller guarantees multiplicativity.
    DirichletCharacter(int64_t modulus, int64_t order, std::vector<int32_t> exps);

    static DirichletCharacter principal(int64_t modulus);

    int64_t modulus() const { return modulus_; }
    int64_t order() const { return order_; }

    // -1 for chi(n)=0, otherwise the exponent k with chi(n)=e(k/order).
    int32_t exponent_at(int64_t n) const;
    Complex value(int64_t n) const;
    // Exact value for real characters: -1, 0, +1. Throws if chi is not real.
    int value_real(int64_t n) const;

    bool is_principal() const;
    bool is_real() const;
    int parity() const;  // chi(-1): +1 even, -1 odd

    int64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }

    // Primitive character of modulus conductor() inducing *this.
    DirichletCharacter primitive() const;
    // Induce to a multiple M of the modulus.
    DirichletCharacter induce(int64_t M) const;
    // p-part {chi}_p as a character mod p^{v_p(N)}.
    DirichletCharacter p_part(int64_t p) const;

    DirichletCharacter operator*(const DirichletCharacter& other) const;
    DirichletCharacter conjugate() const;
    DirichletCharacter pow(int64_t k) const;

    bool operator==(const DirichletCharacter& other) const;

  private:
    int64_t modulus_ = 1;
    int64_t order_ = 1;
    std::vector<int32_t> exps_{0};  // index 0 = chi(0 mod 1) = 1
    mutable int64_t conductor_cache_ = 0;
};

// chi_a = chi_{D(a)} * 1_a  (Kronecker character cut at primes dividing a).
DirichletCharacter kronecker_chi(int64_t a);
// chi_{a^vee}: chi_a if a=1 (mod 4), chi_{-a} if a=3 (mod 4); odd a only.
DirichletCharacter kronecker_chi_vee(int64_t a);

// The full group of Dirichlet characters modulo N (size phi(N)).
std::vector<DirichletCharacter> char_group(int64_t N);

// e_chi  = f_chi * prod_{p | N, p !| f_chi} p
// e_chi' = f_chi * prod_{p | N, p !| f_chi} p^2
int64_t e_chi(const DirichletCharacter& chi);
int64_t e_chi_prime(const DirichletCharacter& chi);

// Gauss sums: direct summation, and the closed form for non-primitive
// characters (tau(chi~) times a single surviving Moebius term).
Complex gauss_sum_direct(const DirichletCharacter& chi, int64_t m);
Complex gauss_sum_formula(const DirichletCharacter& chi, int64_t m);

}  // namespace rankinlab::numthy
