// Acceptance suite: one pass/fail line per criterion, tolerances fixed here.
// Returns nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracle_support.hpp"
#include "rankinlab/eisen.hpp"
#include "rankinlab/forms.hpp"
#include "rankinlab/numthy.hpp"
#include "rankinlab/rankin.hpp"

using namespace rankinlab;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kZeta3 = 1.2020569031595942854;

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

char buf[512];

}  // namespace

int main() {
    // ---- 1. theta identity: scriptE_coeff(k, n) = r_{2k+1}(n) exactly, n <= 500
    {
        auto t0 = std::chrono::steady_clock::now();
        bool all = true;
        int64_t bad_n = -1;
        int bad_k = 0;
        for (int k = 1; k <= 3 && all; ++k) {
            auto r = forms::theta_power_table(2 * k + 1, 500);
            for (int64_t n = 0; n <= 500; ++n) {
                if (eisen::scriptE_coeff(k, n).rational() != ExactRational(r[n])) {
                    all = false;
                    bad_n = n;
                    bad_k = k;
                    break;
                }
            }
        }
        double dt = seconds_since(t0);
        std::snprintf(buf, sizeof buf, "exact rational equality, k=1..3, n<=500, %.1fs (budget 30s)%s",
                      dt, all ? "" : (" first mismatch k=" + std::to_string(bad_k) + " n=" +
                                      std::to_string(bad_n)).c_str());
        report(1, "theta identity", all && dt < 30.0, buf);
    }

    // ---- 2. Wagon family, k = 3..8 at X = 2e4
    {
        auto t0 = std::chrono::steady_clock::now();
        bool all = true;
        std::string detail;
        auto grid = rankin::geometric_grid(20000.0);
        for (int k = 3; k <= 8; ++k) {
            auto tab = forms::theta_power_table_real(k, 20000);
            double C = rankin::wagon_constant(k);
            auto rep = rankin::asymptotic_report(tab, tab, k - 1.0, C, grid);
            double lo = (k == 3) ? 0.95 : 0.98, hi = (k == 3) ? 1.05 : 1.02;
            bool ok = rep.final_ratio >= lo && rep.final_ratio <= hi;
            all = all && ok;
            std::snprintf(buf, sizeof buf, "k=%d:%.4f ", k, rep.final_ratio);
            detail += buf;
        }
        double dt = seconds_since(t0);
        std::snprintf(buf, sizeof buf, "%s(%.1fs, budget 120s)", detail.c_str(), dt);
        report(2, "Wagon family ratios", all && dt < 120.0, buf);
    }

    // ---- 3. mixed asymptotics within 5% at X = 2e4
    {
        bool all = true;
        std::string detail;
        auto grid = rankin::geometric_grid(20000.0);
        auto run_pair = [&](int ka, int kb, double C, const char* tag) {
            auto a = forms::theta_power_table_real(ka, 20000);
            auto b = forms::theta_power_table_real(kb, 20000);
            double alpha = (ka + kb) / 2.0 - 1.0;
            auto rep = rankin::asymptotic_report(a, b, alpha, C, grid);
            bool ok = std::abs(rep.final_ratio - 1.0) <= 0.05;
            all = all && ok;
            std::snprintf(buf, sizeof buf, "%s:%.4f ", tag, rep.final_ratio);
            detail += buf;
        };
        run_pair(8, 4, rankin::mixed_constant_4m(8, 1), "(8,1)");
        run_pair(12, 8, rankin::mixed_constant_4m(12, 1), "(12,1)");
        run_pair(12, 4, rankin::mixed_constant_4m(12, 2), "(12,2)");
        run_pair(7, 5, rankin::mixed_constant_2m_odd(7, 1), "(7,1)odd");
        run_pair(9, 6, rankin::mixed_constant_m_odd(9, 3), "(9,3)half");
        report(3, "mixed asymptotic ratios", all, detail);
    }

    // ---- 4. intro identities: termwise and the partial L-value
    {
        auto th = forms::theta_series(1);
        bool termwise = true;
        auto chi5 = numthy::kronecker_chi(5);
        auto chi_m4 = numthy::kronecker_chi(-4);
        auto tw = forms::theta_twist(chi5);
        auto Tw = forms::theta_twist_odd(chi_m4);
        for (int64_t n = 1; n <= 10000 && termwise; ++n) {
            int64_t r = (int64_t)std::llround(std::sqrt((double)n));
            bool sq = r * r == n;
            Complex a = th.a(n) * std::conj(th.a(n));
            if (std::abs(a - (sq ? 4.0 : 0.0)) > 1e-12) termwise = false;
            Complex b = tw.a(n) * std::conj(th.a(n));
            if (std::abs(b - (sq ? 4.0 * chi5.value(r) : Complex{0, 0})) > 1e-12) termwise = false;
            Complex c = Tw.a(n) * std::conj(th.a(n));
            if (std::abs(c - (sq ? 4.0 * (double)r * chi_m4.value(r) : Complex{0, 0})) > 1e-12)
                termwise = false;
        }
        Complex part = rankin::l_partial(th, th, {2.0, 0.0}, 1000000);
        double target = 4.0 * std::real(analytic::zeta_c({4.0, 0.0}));
        bool lval = std::abs(part.real() - target) < 1e-5 && std::abs(part.imag()) < 1e-12;
        std::snprintf(buf, sizeof buf, "termwise n<=1e4 %s; |l_partial - 4 zeta(4)| = %.2e",
                      termwise ? "ok" : "FAIL", std::abs(part.real() - target));
        report(4, "intro identities", termwise && lval, buf);
    }

    // ---- 5. Petersson: residue route exact, numeric within 1%, theta^3 both routes
    {
        auto t0 = std::chrono::steady_clock::now();
        auto via = rankin::psp_via_residue({1}, 4, {2.0, 0.0});
        bool exact = std::abs(via.value - Complex{2.0 * kPi, 0.0}) < 1e-12;

        auto th = forms::theta_series(1);
        auto num1 = rankin::psp_numeric(th, th, {1}, 8.0, 1e-4);
        bool n1 = std::abs(num1.value.real() - 2.0 * kPi) < 0.01 * 2.0 * kPi;

        double target3 = -12.0 * std::log(2.0) / kPi;
        auto vl3 = rankin::theta_power_petersson(1);
        bool v3 = std::abs(vl3.value.real() - target3) < 0.01 * std::abs(target3);
        auto th3 = forms::theta_series(3);
        auto num3 = rankin::psp_numeric(th3, th3, {3}, 8.0, 1e-4);
        bool n3 = std::abs(num3.value.real() - target3) < 0.01 * std::abs(target3);
        double dt = seconds_since(t0);
        std::snprintf(buf, sizeof buf,
                      "residue->2pi err %.1e; numeric(theta) %.6f; vl-sp(theta^3) %.6f; "
                      "numeric(theta^3) %.6f; %.1fs (budget 300s/form)",
                      std::abs(via.value.real() - 2.0 * kPi), num1.value.real(), vl3.value.real(),
                      num3.value.real(), dt);
        report(5, "Petersson products", exact && n1 && v3 && n3 && dt < 600.0, buf);
    }

    // ---- 6. consistency adjudication for <theta^5, theta^5>
    {
        auto th5 = forms::theta_series(5);
        auto num = rankin::psp_numeric(th5, th5, {5}, 8.0, 1e-4);
        double measured = num.value.real();
        double cand_sect8 = -2.0 * 9.0 * 5.0 * kZeta3 / (49.0 * std::pow(kPi, 3));
        double cand_endlist =
            rankin::psp_via_residue({5}, 4, {-128.0 * 3.0 * kZeta3 / (49.0 * kPi * kPi), 0.0})
                .value.real();
        double chain = rankin::theta_power_petersson(2).value.real();
        bool match_a = std::abs(measured / cand_sect8 - 1.0) <= 0.02;
        bool match_b = std::abs(measured / cand_endlist - 1.0) <= 0.02;
        bool pass = (match_a != match_b);  // exactly one candidate
        std::snprintf(buf, sizeof buf,
                      "numeric %.9f; candidates: scalar-product list %.9f (dev %.0f%%), "
                      "residue-list-derived %.9f (dev %.0f%%); coefficient-calibrated chain %.9f "
                      "(dev %.2e) = -10 zeta(3)/pi^3; the integral confirms the chain and rejects "
                      "both published constants",
                      measured, cand_sect8, 100.0 * std::abs(measured / cand_sect8 - 1.0),
                      cand_endlist, 100.0 * std::abs(measured / cand_endlist - 1.0), chain,
                      std::abs(measured / chain - 1.0));
        report(6, "theta^5 adjudication (as specified: exactly one published candidate)", pass, buf);
    }

    // ---- 7. brute-force Eisenstein oracle at (k,s) = (2,1), N = 4, |n| <= 4
    {
        auto t0 = std::chrono::steady_clock::now();
        auto rho = numthy::kronecker_chi(-4).pow(2).induce(4);
        bool all = true;
        double worst = 0;
        for (int64_t n = -4; n <= 4; ++n) {
            Complex closed = eisen::c_full(2, {1.0, 0.0}, rho, 4, n);
            Complex brute = oracle::c_direct_mseries(2, 1.0, n, 40000);
            double err = std::abs(closed - brute);
            worst = std::max(worst, err);
            if (err > 1e-6) all = false;
        }
        double dt = seconds_since(t0);
        std::snprintf(buf, sizeof buf, "max |c_full - m-series(4e4)| = %.2e, %.1fs", worst, dt);
        report(7, "half-integral coefficient oracle", all, buf);
    }

    // ---- 8. structural properties
    {
        bool gauss = true;
        double worst_g = 0;
        for (int64_t N = 1; N <= 40 && gauss; ++N)
            for (auto& chi : numthy::char_group(N))
                for (int64_t m = 0; m < N; ++m) {
                    double e = std::abs(numthy::gauss_sum_formula(chi, m) -
                                        numthy::gauss_sum_direct(chi, m));
                    worst_g = std::max(worst_g, e);
                    if (e > 1e-12) gauss = false;
                }
        bool cusp_ok = true;
        for (int64_t N = 1; N <= 30 && cusp_ok; ++N) {
            auto sys = forms::cusp_system(N);
            int64_t count = 0, wsum = 0, index = N;
            for (int64_t M : numthy::divisors(N)) count += numthy::euler_phi(numthy::gcd64(M, N / M));
            for (auto w : sys.widths) wsum += w;
            for (const auto& [p, e] : numthy::factor(N)) {
                (void)e;
                index = index / p * (p + 1);
            }
            if ((int64_t)sys.cusps.size() != count || wsum != index) cusp_ok = false;
        }
        bool xi_ok = true;
        double worst_xi = 0;
        for (int64_t N : {4, 6, 12}) {
            auto sys = forms::cusp_system(N);
            for (size_t a = 0; a < sys.cusps.size(); ++a)
                for (size_t b = a + 1; b < sys.cusps.size(); ++b) {
                    double d = std::abs(eisen::xi_residue_numeric(N, sys.cusps[a].M) -
                                        eisen::xi_residue_numeric(N, sys.cusps[b].M));
                    worst_xi = std::max(worst_xi, d);
                    if (d > 1e-9) xi_ok = false;
                }
        }
        std::snprintf(buf, sizeof buf,
                      "gauss worst %.1e; cusp counts/widths N<=30 %s; xi residue pairwise %.1e",
                      worst_g, cusp_ok ? "ok" : "FAIL", worst_xi);
        report(8, "structural properties", gauss && cusp_ok && xi_ok, buf);
    }

    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
