#include "rankinlab/analytic.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace rankinlab::analytic {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;

// B_2, B_4, ..., B_30 as doubles for the asymptotic series.
constexpr double kBern2n[] = {
    1.0 / 6,     -1.0 / 30,    1.0 / 42,      -1.0 / 30,     5.0 / 66,
    -691.0 / 2730, 7.0 / 6,    -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
    854513.0 / 138, -236364091.0 / 2730, 8553103.0 / 6, -23749461029.0 / 870,
    8615841276005.0 / 14322};

bool near_nonpositive_integer(Complex s) {
    if (std::abs(s.imag()) > 1e-13) return false;
    double r = s.real();
    return r <= 0.5 && std::abs(r - std::round(r)) < 1e-13;
}

}  // namespace

Complex lgamma_c(Complex s) {
    if (s.real() < 0.5) throw std::domain_error("lgamma_c: Re s must be >= 1/2");
    // shift until Re >= 12, then Stirling
    Complex shift{0.0, 0.0};
    while (s.real() < 12.0) {
        shift -= std::log(s);
        s += 1.0;
    }
    Complex out = (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi);
    Complex s2 = 1.0 / (s * s), term = 1.0 / s;
    for (int j = 1; j <= 10; ++j) {
        out += kBern2n[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * term;
        term *= s2;
    }
    return out + shift;
}

Complex gamma_c(Complex s) {
    if (near_nonpositive_integer(s))
        throw std::domain_error("gamma_c: pole at non-positive integer");
    if (s.real() < 0.5) {
        // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return kPi / (std::sin(kPi * s) * std::exp(lgamma_c(1.0 - s)));
    }
    return std::exp(lgamma_c(s));
}

double digamma_real(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("digamma_real: pole");
    double out = 0.0;
    if (x < 0.0) {
        // reflection: psi(1-x) - psi(x) = pi cot(pi x)
        return digamma_real(1.0 - x) - kPi / std::tan(kPi * x);
    }
    while (x < 12.0) {
        out -= 1.0 / x;
        x += 1.0;
    }
    out += std::log(x) - 0.5 / x;
    double x2 = 1.0 / (x * x), term = x2;
    for (int j = 1; j <= 10; ++j) {
        out -= kBern2n[j - 1] / (2.0 * j) * term;
        term *= x2;
    }
    return out;
}

namespace {

// Euler-Maclaurin Hurwitz zeta: shift M terms, correction order 2J.
Complex hurwitz_em(Complex s, double x) {
    constexpr int M = 20, J = 12;
    if (std::abs(s - Complex{1.0, 0.0}) < 1e-14)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    Complex acc{0.0, 0.0};
    for (int n = 0; n < M; ++n) acc += std::pow(Complex{x + n, 0.0}, -s);
    double a = x + M;
    Complex amS = std::pow(Complex{a, 0.0}, -s);
    acc += amS * a / (s - 1.0);
    acc += 0.5 * amS;
    // sum_j B_2j/(2j)! * (s)_{2j-1} * a^{-s-2j+1}
    Complex poch = s;           // rising factorial (s)_{2j-1}
    Complex apow = amS / a;     // a^{-s-1}
    double fact = 2.0;          // (2j)!
    for (int j = 1; j <= J; ++j) {
        acc += kBern2n[j - 1] / fact * poch * apow;
        if (j < J) {
            poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
            apow /= a * a;
            fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        }
    }
    return acc;
}

}  // namespace

Complex hurwitz_zeta(Complex s, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("hurwitz_zeta: x must be in (0,1]");
    return hurwitz_em(s, x);
}

Complex hurwitz_zeta(Complex s, int64_t num, int64_t den) {
    if (den <= 0 || num <= 0 || num > den) throw std::domain_error("hurwitz_zeta: bad rational");
    return hurwitz_em(s, static_cast<double>(num) / static_cast<double>(den));
}

Complex zeta_c(Complex s) { return hurwitz_em(s, 1.0); }

Complex dirichlet_L(Complex s, const numthy::DirichletCharacter& chi) {
    auto prim = chi.primitive();
    int64_t f = prim.modulus();
    bool at_one = std::abs(s - Complex{1.0, 0.0}) < 1e-14;
    Complex L;
    if (f == 1) {
        if (at_one) throw std::domain_error("dirichlet_L: pole of L(s, 1_N) at s = 1");
        L = zeta_c(s);
    } else if (at_one) {
        // L(1, chi~) = -(1/f) sum_a chi~(a) psi(a/f) for nontrivial chi~
        Complex acc{0.0, 0.0};
        for (int64_t a = 1; a < f; ++a) {
            Complex v = prim.value(a);
            if (v != Complex{0.0, 0.0})
                acc -= v * digamma_real(static_cast<double>(a) / static_cast<double>(f));
        }
        L = acc / static_cast<double>(f);
    } else {
        Complex acc{0.0, 0.0};
        for (int64_t a = 1; a <= f; ++a) {
            Complex v = prim.value(a);
            if (v != Complex{0.0, 0.0}) acc += v * hurwitz_zeta(s, a, f);
        }
        L = std::pow(Complex{static_cast<double>(f), 0.0}, -s) * acc;
    }
    // reinsert Euler factors at primes dividing the modulus but not the conductor
    for (const auto& [p, e] : numthy::factor(chi.modulus())) {
        (void)e;
        if (f % p == 0) continue;
        L *= 1.0 - prim.value(p) * std::pow(Complex{static_cast<double>(p), 0.0}, -s);
    }
    return L;
}

// ---------------------------------------------------------------------------
// Exact Bernoulli machinery
// ---------------------------------------------------------------------------

namespace {
std::vector<ExactRational> g_bern;
std::vector<std::vector<ExactRational>> g_bpoly;
std::once_flag g_bern_once;

boost::multiprecision::cpp_int binom(int n, int k) {
    boost::multiprecision::cpp_int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

void build_bernoulli() {
    constexpr int NMAX = 32;
    g_bern.resize(NMAX + 1);
    g_bern[0] = 1;
    for (int m = 1; m <= NMAX; ++m) {
        // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
        ExactRational acc = 0;
        for (int j = 0; j < m; ++j) acc += ExactRational(binom(m + 1, j)) * g_bern[j];
        g_bern[m] = -acc / (m + 1);
    }
    g_bpoly.resize(17);
    for (int k = 0; k <= 16; ++k) {
        g_bpoly[k].resize(k + 1);
        for (int j = 0; j <= k; ++j)
            g_bpoly[k][j] = ExactRational(binom(k, j)) * g_bern[k - j];  // coeff of x^j
    }
}
}  // namespace

const ExactRational& bernoulli_number(int n) {
    std::call_once(g_bern_once, build_bernoulli);
    if (n < 0 || n > 32) throw std::domain_error("bernoulli_number: n out of cached range");
    return g_bern[n];
}

const std::vector<ExactRational>& bernoulli_poly(int k) {
    std::call_once(g_bern_once, build_bernoulli);
    if (k < 0 || k > 16) throw std::domain_error("bernoulli_poly: k out of cached range");
    return g_bpoly[k];
}

ExactRational bernoulli_poly_at(int k, const ExactRational& x) {
    const auto& c = bernoulli_poly(k);
    ExactRational acc = 0;
    for (int j = k; j >= 0; --j) acc = acc * x + c[j];
    return acc;
}

ExactRational generalized_bernoulli(int k, const numthy::DirichletCharacter& chi) {
    auto prim = chi.primitive();
    if (!prim.is_real())
        throw std::domain_error("generalized_bernoulli: character must be quadratic or trivial");
    int64_t f = prim.modulus();
    ExactRational acc = 0;
    for (int64_t a = 1; a <= f; ++a) {
        int v = prim.value_real(a);
        if (v) acc += v * bernoulli_poly_at(k, ExactRational(a, f));
    }
    ExactRational fk = 1;
    for (int i = 0; i < k - 1; ++i) fk *= f;
    return fk * acc;
}

ExactRational L_special_exact(int k, const numthy::DirichletCharacter& chi) {
    if (k < 1) throw std::domain_error("L_special_exact: k must be >= 1");
    auto prim = chi.primitive();
    int want = (k % 2 == 0) ? 1 : -1;
    if (prim.parity() != want && !(prim.modulus() == 1 && k == 1)) return 0;
    // trivial chi, k = 1: B_{1,1} = B_1(1) = 1/2, L(0) = -1/2 (zeta(0))
    ExactRational B = generalized_bernoulli(k, prim);
    return -B / k;
}

Complex log_derivative(const std::function<Complex(Complex)>& f, Complex s0, double h) {
    auto central = [&](double hh) { return (f(s0 + hh) - f(s0 - hh)) / (2.0 * hh); };
    Complex d1 = central(h), d2 = central(h / 2.0);
    Complex out = (4.0 * d2 - d1) / 3.0;
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
        throw std::domain_error("log_derivative: non-finite evaluation");
    return out;
}

}  // namespace rankinlab::analytic
