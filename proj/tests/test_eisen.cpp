#include <doctest.h>

#include <cmath>

#include "oracle_support.hpp"
#include "rankinlab/eisen.hpp"
#include "rankinlab/forms.hpp"

using namespace rankinlab;
using namespace rankinlab::eisen;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("xi_weight0: residue universality at s = 1") {
    for (int64_t N : {4, 6, 12}) {
        auto sys = forms::cusp_system(N);
        double target = xi_weight0_residue(N);
        Complex first{0, 0};
        for (size_t j = 0; j < sys.cusps.size(); ++j) {
            Complex r = xi_residue_numeric(N, sys.cusps[j].M);
            CHECK(std::abs(r.real() - target) < 1e-9);
            CHECK(std::abs(r.imag()) < 1e-12);
            if (j == 0) first = r;
            CHECK(std::abs(r - first) < 1e-9);
        }
    }
    // N = 4: residue is 1/(2 pi)
    CHECK(std::abs(xi_weight0_residue(4) - 1.0 / (2.0 * kPi)) < 1e-15);
    CHECK_THROWS(xi_weight0(4, 2, {1.0, 0.0}));
}

TEST_CASE("xi_weight_k reduces to xi_weight0 at k = 0") {
    Complex s{2.5, 0.0};
    CHECK(std::abs(xi_weight_k(4, 0, 2, s) - xi_weight0(4, 2, s)) < 1e-12);
    Complex s2{1.3, 0.4};
    CHECK(std::abs(xi_weight_k(6, 0, 3, s2) - xi_weight0(6, 3, s2)) < 1e-12);
}

TEST_CASE("xi_weight_k sign factor flips between k=2 and k=4") {
    Complex s{0.8, 0.0};
    Complex a = xi_weight_k(4, 2, 1, s);
    Complex b = xi_weight_k(4, 4, 1, s);
    CHECK(a.real() * b.real() < 0.0);
}

TEST_CASE("xi vs brute-force lattice constant term") {
    // N=6, M=2, s=2, weight 0
    auto sys = forms::cusp_system(6);
    int64_t j = sys.index_of(forms::Cusp{1, 2});
    Complex brute = oracle::eis_ct_lattice(6, 0, sys.scaling[j], 2.0, 5.0, 400, sys.widths[j]);
    Complex closed = xi_weight0(6, 2, {2.0, 0.0});
    CHECK(std::abs(brute - closed) < 1e-4);

    // N=4, k=2, M=1, s=0.75 (both sides converge there)
    auto sys4 = forms::cusp_system(4);
    int64_t j0 = sys4.index_of(forms::Cusp{0, 1});
    Complex brute2 = oracle::eis_ct_lattice(4, 2, sys4.scaling[j0], 0.75, 5.0, 400, sys4.widths[j0]);
    Complex closed2 = xi_weight_k(4, 2, 1, {0.75, 0.0});
    CHECK(std::abs(brute2 - closed2) < 1e-4 * std::max(1.0, std::abs(closed2)));
}

TEST_CASE("u-factors") {
    // primitive rho: the P-sum collapses to P = 1 with U_{k,rho,1} = phi(1) = 1
    auto chi5 = numthy::kronecker_chi(5);
    auto uf = u_factors_integral(2, chi5, {1.5, 0.0});
    REQUIRE(uf.by_divisor.size() == 1);
    CHECK(std::abs(uf.by_divisor.at(1) - Complex{1, 0}) < 1e-14);

    // N squarefree: U_{0,P} at P = N is prod (1 - p^{2s})
    auto u0 = u0_factors(6, {0.7, 0.0});
    Complex expect = (1.0 - std::pow(2.0, 1.4)) * (1.0 - std::pow(3.0, 1.4));
    CHECK(std::abs(u0.by_divisor.at(6) - expect) < 1e-12);

    // U_0(s) at N=4, s=2, written out independently from the display:
    //   N^{s-1} e^{-1} Gamma(s) zeta(2s) / (Gamma(s-1/2) zeta(2s-1) prod_{p|e}(1-p^{2-2s}))
    auto u04 = u0_factors(4, {2.0, 0.0});
    double indep = std::pow(4.0, 1.0) / 2.0 * 1.0 /* Gamma(2) */ *
                   std::real(analytic::zeta_c({4.0, 0.0})) /
                   (std::real(analytic::gamma_c({1.5, 0.0})) * std::real(analytic::zeta_c({3.0, 0.0})) *
                    (1.0 - std::pow(2.0, -2.0)));
    CHECK(std::abs(u04.leading - Complex{indep, 0.0}) < 1e-12);
}

TEST_CASE("u_factors_half: structure and the section-8 displays") {
    // R = 1: empty product, R^0 = 1
    auto chi_m4 = numthy::kronecker_chi(-4).induce(4);
    auto uh = u_factors_half(1, chi_m4, {0.9, 0.0});
    CHECK(std::abs(uh.by_divisor.at(1) - Complex{1, 0}) < 1e-14);

    // e(-(k+1/2)/4) phase for k = 0 is e(-1/8)
    Complex ph{std::cos(-2.0 * kPi / 8.0), std::sin(-2.0 * kPi / 8.0)};
    auto uh0 = u_factors_half(0, numthy::DirichletCharacter::principal(4), {0.9, 0.0});
    // strip the phase: leading / |leading| should match e(-1/8) direction
    Complex dir = uh0.leading / std::abs(uh0.leading);
    double lead_sign = std::real(analytic::zeta_c({-1.0 + 4.0 * 0.9, 0.0})) < 0 ? -1.0 : 1.0;
    CHECK(std::abs(dir - lead_sign * ph) < 1e-10);

    // xi^{(0)} and xi^{(1/4)} from the U-products match the displayed forms
    for (int k : {1, 2, 3}) {
        auto rho = numthy::kronecker_chi(-4).pow(k).induce(4);
        for (Complex s : {Complex{0.6, 0.0}, Complex{1.1, 0.3}}) {
            auto u = u_factors_half(k, rho, s);
            Complex xi0 = u.leading * u.by_divisor.at(1);
            CHECK(std::abs(xi0 - xi_half_zero(k, s)) < 1e-10 * std::max(1.0, std::abs(xi0)));
            Complex rho2m1 = (k % 2 == 0) ? Complex{1, 0} : Complex{-1, 0};
            Complex xi14 = (1.0 + rho2m1 * Complex{0, 1}) * u.leading * u.by_divisor.at(4);
            CHECK(std::abs(xi14 - xi_half_quarter(k, s)) < 1e-10 * std::max(1.0, std::abs(xi14)));
        }
    }
    CHECK(std::abs(xi_half_half(2, {0.7, 0.0})) == 0.0);
}

TEST_CASE("psi_n") {
    auto chi_m4 = numthy::kronecker_chi(-4);
    CHECK(psi_n(chi_m4, 1) == chi_m4);
    CHECK(psi_n(numthy::DirichletCharacter::principal(2), -1) == chi_m4);
    CHECK(psi_n(chi_m4, -4).modulus() == 1);  // principal: primitive part trivial
    CHECK_THROWS(psi_n(chi_m4, 0));
}

TEST_CASE("f_local cases") {
    auto rho = numthy::kronecker_chi(-4).pow(2).induce(4);  // trivial mod 4
    Complex s{0.3, 0.0};
    // v_p(n) = 0 and 1 give 1
    CHECK(std::abs(f_local(2, s, rho, 1, 3).value - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(f_local(2, s, rho, 3, 3).value - Complex{1, 0}) < 1e-14);
    CHECK(f_local(2, s, rho, 3, 3).branch == "v_p odd");
    // v_p(n) = 2: 1 + rho~^2(p) p^{-2k+1-4s} - psi_n(p) p^{-k-2s}
    int k = 2;
    Complex expect = 1.0 + std::pow(3.0, -2.0 * k + 1.0 - 4.0 * s.real()) -
                     psi_n(rho, 9).value(3) * std::pow(3.0, -k - 2.0 * s.real());
    CHECK(std::abs(f_local(k, s, rho, 9, 3).value - expect) < 1e-13);
}

TEST_CASE("local factors against the definitional character sums") {
    // odd-p factors of c'': (1 +- ...) f pattern, typo-fixed exponent
    for (int k : {1, 2}) {
        auto rho = numthy::kronecker_chi(-4).pow(k).induce(4);
        for (auto [n, p] : std::vector<std::pair<int64_t, int64_t>>{
                 {3, 3}, {9, 3}, {27, 3}, {5, 5}, {25, 5}, {45, 3}, {45, 5}, {7, 7}}) {
            Complex def = oracle::p_factor_definitional(k, 0.0, n, p);
            int vp = numthy::valuation(n, p);
            Complex mult;
            if (vp % 2 == 0)
                mult = 1.0 + psi_n(rho, n).value(p) * std::pow((double)p, -(double)k);
            else
                mult = 1.0 - std::pow((double)p, -2.0 * k);
            Complex closed = mult * f_local(k, {0, 0}, rho, n, p).value;
            CHECK(std::abs(def - closed) < 1e-10);
        }
    }
    // 2-adic factor c^{(2)} against its definitional sum
    for (int k : {1, 2, 3}) {
        auto rho = numthy::kronecker_chi(-4).pow(k).induce(4);
        for (int64_t n = 1; n <= 24; ++n) {
            Complex def = oracle::c2_definitional(k, 0.0, n);
            Complex closed = c2_factor(k, {0, 0}, rho, 4, n);
            CHECK(std::abs(def - closed) < 1e-10);
        }
        // s != 0 too
        Complex s{0.7, 0.0};
        for (int64_t n : {1, 2, 3, 4, 6, 8}) {
            Complex def = oracle::c2_definitional(k, 0.7, n);
            Complex closed = c2_factor(k, s, rho, 4, n);
            CHECK(std::abs(def - closed) < 1e-10);
        }
    }
}

TEST_CASE("f_local_r branch structure") {
    auto rho = numthy::kronecker_chi(-4).pow(2).induce(4);
    Complex s{0.7, 0.0};
    // branches for n in {1,2,3,4,6,8} at p=2, adjudicated by the c2 oracle above;
    // here check tags fire exhaustively and k+2s=0 is rejected
    std::set<std::string> seen;
    for (int64_t n : {1, 2, 3, 4, 6, 8}) seen.insert(f_local_r(2, s, rho, n, 2).branch);
    CHECK(seen.size() >= 3);
    CHECK_THROWS(f_local_r(2, {-1.0, 0.0}, rho, 1, 2));
    // {psi_n}_2 = chi_pm8 with v_2(n) = 0: single closed product, no f term
    // (needs 8 | f_psi with n odd: rho with a chi_8 factor)
    auto rho8 = numthy::kronecker_chi(8).induce(8);
    auto r = f_local_r(1, s, rho8, 1, 2);  // psi_1 = chi_8-bar-ish: conductor 8
    CHECK(r.branch == "2: psi2=chi_pm8, v = 0");
}

TEST_CASE("c_double_prime") {
    auto rho = numthy::kronecker_chi(-4).pow(2).induce(4);  // 1_4
    Complex s{1.0, 0.0};
    int k = 2;
    // n = 1: single L-ratio times the p = 2 correction
    Complex expect = analytic::dirichlet_L({(double)k + 2.0, 0.0}, psi_n(rho, 1)) /
                     analytic::zeta_c({2.0 * k + 4.0, 0.0});
    expect *= (1.0 - psi_n(rho, 1).value(2) * std::pow(2.0, -(double)k - 2.0)) /
              (1.0 - std::pow(2.0, -2.0 * k - 4.0));
    CHECK(std::abs(c_double_prime(k, s, rho, 4, 1) - expect) < 1e-12);

    // n = 0: L(2k-1+4s)/L(2k+4s) with the p|2f_r correction
    Complex e0 = analytic::zeta_c({2.0 * k - 1.0 + 4.0, 0.0}) / analytic::zeta_c({2.0 * k + 4.0, 0.0});
    e0 *= (1.0 - std::pow(2.0, -2.0 * k + 1.0 - 4.0)) / (1.0 - std::pow(2.0, -2.0 * k - 4.0));
    CHECK(std::abs(c_double_prime(k, s, rho, 4, 0) - e0) < 1e-12);
}

TEST_CASE("c_full: decomposition law and the m-series oracle (small cutoff)") {
    auto rho = numthy::kronecker_chi(-4).pow(2).induce(4);
    Complex s{1.0, 0.0};
    // the factored/fused structural assertion runs inside c_full
    for (int64_t n : {-2, -1, 0, 1, 2, 3, 4}) {
        Complex v = c_full(2, s, rho, 4, n);
        Complex brute = oracle::c_direct_mseries(2, 1.0, n, 6000);
        CHECK(std::abs(v - brute) < 2e-5);  // acceptance runs the 4e4 cutoff at 1e-6
    }
    // rho complex => c(0) = 0
    for (auto& chi : numthy::char_group(5)) {
        if (chi.is_real()) continue;
        auto rhoc = chi.primitive().induce(20);
        CHECK(std::abs(c_full(1, {0.8, 0.0}, rhoc, 20, 0)) < 1e-14);
        break;
    }
}

TEST_CASE("alpha_k2") {
    // spec substitution example: k=1, n=1 fires the (-1)^k 3 branch, value -1/3
    auto a = alpha_k2(1, 1);
    CHECK(a.value == ExactRational(-1, 3));
    CHECK(a.branch == "v even, 2^-v n = (-1)^k 3 (4)");
    // v_2(n) odd, k = 2 substitution: -(1-2^-4)^{-1} + (1-2^-3)^{-1}(1-2^{(v-1)/2 (-3)})
    auto b = alpha_k2(2, 2);  // v = 1
    CHECK(b.value == ExactRational(-16, 15) + ExactRational(8, 7) * (1 - ExactRational(1)));
    auto c = alpha_k2(2, 8);  // v = 3: exponent (3-1)/2 * (-3) = -3
    CHECK(c.value == ExactRational(-16, 15) + ExactRational(8, 7) * (1 - ExactRational(1, 8)));
    // exactly one branch fires for every (k, n), k <= 4, n <= 512
    for (int k = 1; k <= 4; ++k)
        for (int64_t n = 1; n <= 512; ++n) CHECK_NOTHROW(alpha_k2(k, n));
}

TEST_CASE("eis_half_coeff_N4_s0 and the alpha-display equivalence") {
    // E-series coefficient: P_k alpha_k(n,2) L(1-k, psi~) (f^{-1} n)^{k-1/2} prod f
    // P_k = -4^k k / B_{2k}
    for (int k : {1, 2, 3}) {
        ExactRational Pk = ExactRational(-1) * ExactRational((int64_t)std::pow(4, k)) * k /
                           analytic::bernoulli_number(2 * k);
        for (int64_t n = 1; n <= 40; ++n) {
            int64_t D = numthy::fundamental_discriminant(k % 2 == 0 ? n : -n);
            auto psi = numthy::kronecker_chi(D);
            ExactRational L = analytic::L_special_exact(k, psi);
            // (f^{-1} n)^{k-1/2} = m^{2k-1}, m = sqrt(n/f)
            int64_t f = std::abs(D);
            int64_t g = numthy::gcd64(n, f);
            auto isq = [](int64_t v) {
                int64_t r = (int64_t)std::llround(std::sqrt((double)v));
                while (r * r > v) --r;
                while ((r + 1) * (r + 1) <= v) ++r;
                REQUIRE(r * r == v);
                return r;
            };
            ExactRational m(isq(n / g), isq(f / g));
            ExactRational mp = 1;
            for (int i = 0; i < 2 * k - 1; ++i) mp *= m;
            // numeric comparison (the library path itself is exact)
            double display = static_cast<double>(Pk) * static_cast<double>(alpha_k2(k, n).value) *
                             static_cast<double>(L) * static_cast<double>(mp);
            for (const auto& [p, e] : numthy::factor(n)) {
                (void)e;
                if (p == 2) continue;
                display *=
                    f_local(k, {0, 0}, numthy::kronecker_chi(-4).pow(k).induce(4), n, p).value.real();
            }
            double lib = static_cast<double>(eis_half_coeff_N4_s0(k, n).rational());
            CHECK(std::abs(display - lib) < 1e-9 * std::max(1.0, std::abs(lib)));
        }
    }
}

TEST_CASE("theta identity: scriptE_coeff(k, n) = r_{2k+1}(n) exactly") {
    CHECK(scriptE_coeff(1, 0).rational() == ExactRational(1));
    for (int k : {1, 2, 3}) {
        auto r = forms::theta_power_table(2 * k + 1, 200);
        for (int64_t n = 1; n <= 200; ++n)
            CHECK(scriptE_coeff(k, n).rational() == ExactRational(r[n]));
    }
    // k=2, n=1 recomputed against r_5(1) = 10
    CHECK(scriptE_coeff(2, 1).rational() == ExactRational(10));
}

TEST_CASE("normalize_half_spec") {
    auto rho = numthy::kronecker_chi(-4).induce(4);
    auto norm = normalize_half_spec(rho.induce(16), 16);
    CHECK(norm.N == 4);
    CHECK(norm.scale == 4);
    auto same = normalize_half_spec(rho, 4);
    CHECK(same.scale == 1);
    // chi_8-type 2-part is retargeted
    auto rho8 = numthy::kronecker_chi(8).induce(8);
    auto n8 = normalize_half_spec(rho8, 8);
    CHECK(n8.N == 4);
    CHECK(n8.scale == 2);
}
