#include "rankinlab/rankin.hpp"

#include <algorithm>
#include <cmath>

#include "rankinlab/parallel.hpp"

namespace rankinlab::rankin {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kLog2 = 0.69314718055994530941723212145818;

Complex cpow(double base, Complex s) { return std::exp(s * std::log(base)); }

double gamma_half(double x) { return std::real(analytic::gamma_c({x, 0.0})); }
double zeta_real(double x) { return std::real(analytic::zeta_c({x, 0.0})); }

double L_chi_m4(double s_val) {
    static const auto chi = numthy::kronecker_chi(-4);
    return std::real(analytic::dirichlet_L({s_val, 0.0}, chi));
}

}  // namespace

Complex l_partial(const FourierSeries& f, const FourierSeries& g, Complex s, int64_t X) {
    if (X < 1) throw std::domain_error("l_partial: X must be >= 1");
    Complex acc{0.0, 0.0};
    for (int64_t n = 1; n <= X; ++n) {
        Complex t = f.a(n) * std::conj(g.a(n));
        if (t == Complex{0.0, 0.0}) continue;
        acc += t * cpow(static_cast<double>(n), -s);
    }
    return acc;
}

Complex predicted_residue_general(const FourierSeries& f, const FourierSeries& g,
                                  HalfIntWeight l, HalfIntWeight lp,
                                  const DirichletCharacter& rho, int64_t N,
                                  std::optional<Complex> petersson) {
    auto sys = forms::cusp_system(N);
    double C = eisen::xi_weight0_residue(N);
    if (l == lp) {
        if (!rho.is_principal())
            throw std::domain_error("predicted_residue_general: l = l' requires principal rho here");
        if (l.twice_weight == 2) {
            // weight 1: double pole; lim s^2 L(1+s) = 4 pi C sum_r w a0 conj(b0)
            Complex acc{0.0, 0.0};
            for (size_t j = 0; j < sys.cusps.size(); ++j)
                acc += static_cast<double>(sys.widths[j]) * f.cusp_constant(sys.cusps[j]) *
                       std::conj(g.cusp_constant(sys.cusps[j]));
            return 4.0 * kPi * C * acc;
        }
        // residue at s = l from the pole of the weight-0 Eisenstein series:
        // Res = (4 pi)^l Gamma(l)^{-1} C <f, g>
        if (!petersson)
            throw std::domain_error(
                "predicted_residue_general: l = l' != 1 needs the Petersson product (Laurent data)");
        double lv = l.value();
        return std::pow(4.0 * kPi, lv) / gamma_half(lv) * C * (*petersson);
    }
    // l > l', integral even difference: xi^{(r)}(l') from the displayed
    // constant term of y^s E_{l-l',1_N,N}
    int dk2 = l.twice_weight - lp.twice_weight;
    if (dk2 % 4 != 0)
        throw std::domain_error("predicted_residue_general: weight difference must be even integral here");
    int k = dk2 / 2;
    double lpv = lp.value(), lv = l.value();
    Complex acc{0.0, 0.0};
    for (size_t j = 0; j < sys.cusps.size(); ++j) {
        Complex a0 = f.cusp_constant(sys.cusps[j]);
        Complex b0 = g.cusp_constant(sys.cusps[j]);
        if (a0 == Complex{0.0, 0.0} || b0 == Complex{0.0, 0.0}) continue;
        Complex xi = eisen::xi_weight_k(N, k, sys.cusps[j].M, {lpv, 0.0});
        acc += static_cast<double>(sys.widths[j]) * a0 * std::conj(b0) * std::conj(xi);
    }
    double expo = lv + lpv - 1.0;
    // at a Gamma pole the prefactor vanishes (no pole of L there)
    double ginv;
    try {
        ginv = 1.0 / gamma_half(expo);
    } catch (const std::domain_error&) {
        ginv = 0.0;
    }
    return std::pow(4.0 * kPi, expo) * ginv * acc;
}

Complex predicted_residue_ctk(const FourierSeries& f, const FourierSeries& g,
                              HalfIntWeight l, int k, int64_t N) {
    if (k < 0 || k % 2 != 0) throw std::domain_error("predicted_residue_ctk: k must be even");
    double lv = l.value();
    auto sys = forms::cusp_system(N);
    double phiN = static_cast<double>(numthy::euler_phi(N));
    double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    double pre = sign * std::pow(2.0, 2.0 * lv - k) * std::pow(kPi, 2.0 * lv - k) * phiN *
                 zeta_real(2.0 * lv - k - 1.0) /
                 (gamma_half(lv - k) * gamma_half(lv) * zeta_real(2.0 * lv - k));
    for (const auto& [p, e] : numthy::factor(N)) {
        (void)e;
        pre /= 1.0 - std::pow(static_cast<double>(p), -2.0 * lv + k);
    }
    Complex acc{0.0, 0.0};
    for (size_t j = 0; j < sys.cusps.size(); ++j) {
        const auto& c = sys.cusps[j];
        Complex a0 = f.cusp_constant(c), b0 = g.cusp_constant(c);
        if (a0 == Complex{0.0, 0.0} || b0 == Complex{0.0, 0.0}) continue;
        double num = 1.0;
        for (const auto& [p, e] : numthy::factor(N / c.M)) {
            (void)e;
            num *= 1.0 - std::pow(static_cast<double>(p), -2.0 * lv + k + 1.0);
        }
        double den = static_cast<double>(numthy::gcd64(c.M * c.M, N)) *
                     static_cast<double>(numthy::euler_phi(N / c.M)) *
                     std::pow(static_cast<double>(c.M), 2.0 * lv - k - 1.0);
        acc += a0 * std::conj(b0) * num / den;
    }
    return pre * acc;
}

Complex predicted_residue_oddk_N4(const FourierSeries& f, const FourierSeries& g,
                                  HalfIntWeight l, int k) {
    if (k % 2 != 1) throw std::domain_error("predicted_residue_oddk_N4: k must be odd");
    double lv = l.value();
    Complex a0 = f.cusp_constant(Cusp{0, 1});
    Complex b0 = g.cusp_constant(Cusp{0, 1});
    if (a0 == Complex{0.0, 0.0} || b0 == Complex{0.0, 0.0}) return {0.0, 0.0};
    Complex ik{0, 1};
    Complex ipw{1, 0};
    for (int i = 0; i < ((k % 4) + 4) % 4; ++i) ipw *= ik;
    return ipw * std::pow(2.0, 2.0 * lv - k) * std::pow(kPi, 2.0 * lv - k) * a0 * std::conj(b0) *
           L_chi_m4(2.0 * lv - k - 1.0) /
           (gamma_half(lv - k) * gamma_half(lv) * L_chi_m4(2.0 * lv - k));
}

Complex predicted_residue_halfk_N4(const FourierSeries& f, const FourierSeries& g,
                                   HalfIntWeight l, int k) {
    double lv = l.value();
    double sign = ((k * (k + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    double pre = sign * std::pow(2.0, 2.0 * lv - k - 3.0) * std::pow(kPi, 2.0 * lv - k - 0.5) *
                 zeta_real(4.0 * lv - 2.0 * k - 3.0) /
                 ((std::pow(2.0, 4.0 * lv - 2.0 * k - 2.0) - 1.0) * gamma_half(lv - k - 0.5) *
                  gamma_half(lv) * zeta_real(4.0 * lv - 2.0 * k - 2.0));
    Complex inf_term = f.cusp_constant(Cusp{1, 4}) * std::conj(g.cusp_constant(Cusp{1, 4}));
    Complex zero_term = f.cusp_constant(Cusp{0, 1}) * std::conj(g.cusp_constant(Cusp{0, 1}));
    Complex mix = Complex{1.0, (k % 2 == 0) ? 1.0 : -1.0} * 8.0 *
                  (std::pow(2.0, 4.0 * lv - 2.0 * k - 3.0) - 1.0);
    return pre * (inf_term + mix * zero_term);
}

double wagon_constant(int k) {
    if (k < 3) throw std::domain_error("wagon_constant: k must be >= 3");
    return std::pow(kPi, k) * zeta_real(k - 1.0) /
           (gamma_half(k / 2.0) * gamma_half(k / 2.0) * zeta_real(k) * (1.0 - std::pow(2.0, -k)));
}

double mixed_constant_4m(int k, int m) {
    double mm = m, kk = k;
    double brace = 1.0 - (1.0 - ((m % 2 == 0) ? 1.0 : -1.0)) * std::pow(2.0, -kk + 2 * mm + 1.0);
    return brace * std::pow(kPi, kk - 2 * mm) * zeta_real(kk - 2 * mm - 1.0) /
           (gamma_half(kk / 2 - 2 * mm) * gamma_half(kk / 2) * zeta_real(kk - 2 * mm) *
            (1.0 - std::pow(2.0, -kk + 2 * mm)));
}

double mixed_constant_2m_odd(int k, int m) {
    if (m % 2 != 1) throw std::domain_error("mixed_constant_2m_odd: m must be odd");
    double kk = k, mm = m;
    return std::pow(kPi, kk - mm) * L_chi_m4(kk - mm - 1.0) /
           (gamma_half(kk / 2 - mm) * gamma_half(kk / 2) * L_chi_m4(kk - mm));
}

double mixed_constant_m_odd(int k, int m) {
    if (m % 2 != 1) throw std::domain_error("mixed_constant_m_odd: m must be odd");
    double kk = k, mm = m;
    double brace = 1.0 + numthy::kronecker_symbol(8, m) * std::pow(2.0, -kk + (mm - 3.0) / 2.0) -
                   std::pow(2.0, -2.0 * kk + mm + 2.0);
    return brace * std::pow(kPi, kk - mm / 2.0) * zeta_real(2.0 * kk - mm - 2.0) /
           (gamma_half((kk - mm) / 2.0) * gamma_half(kk / 2.0) * zeta_real(2.0 * kk - mm - 1.0) *
            (1.0 - std::pow(2.0, -2.0 * kk + mm + 1.0)));
}

std::vector<double> geometric_grid(double x_max, int points, double ratio) {
    std::vector<double> out(points);
    for (int i = points - 1; i >= 0; --i) {
        out[i] = x_max;
        x_max /= ratio;
    }
    return out;
}

AsymptoticReport asymptotic_report(const std::vector<double>& a, const std::vector<double>& b,
                                   double alpha, double C, const std::vector<double>& x_grid) {
    if (C == 0.0) throw std::domain_error("asymptotic_report: C must be nonzero");
    for (size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw std::domain_error("asymptotic_report: grid must be strictly increasing");
    AsymptoticReport rep;
    rep.grid = x_grid;
    size_t nmax = std::min(a.size(), b.size()) - 1;
    double acc = 0.0;
    size_t next = 0;
    for (size_t n = 1; n <= nmax && next < x_grid.size(); ++n) {
        acc += a[n] * b[n];
        while (next < x_grid.size() && (n == nmax || static_cast<double>(n + 1) > x_grid[next])) {
            if (static_cast<double>(n) > x_grid[next] + 0.5 && n != nmax) break;
            rep.sums.push_back(acc);
            double pred = C * std::pow(x_grid[next], alpha) / alpha;
            rep.predicted.push_back(pred);
            rep.ratios.push_back(acc / pred);
            ++next;
        }
    }
    // log-log least squares for the exponent
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n_pts = static_cast<int>(rep.sums.size());
    for (int i = 0; i < n_pts; ++i) {
        double lx = std::log(rep.grid[i]), ly = std::log(std::abs(rep.sums[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    rep.fitted_exponent = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    rep.final_ratio = rep.ratios.empty() ? 0.0 : rep.ratios.back();
    return rep;
}

PeterssonResult psp_via_residue(HalfIntWeight l, int64_t N, Complex residue) {
    if (l.twice_weight == 2)
        throw std::domain_error(
            "psp_via_residue: weight 1 excluded (the residue relation degenerates to a double pole)");
    double lv = l.value();
    double pre = std::pow(4.0, -lv) * std::pow(kPi, -lv + 1.0) * gamma_half(lv) / 3.0;
    pre *= static_cast<double>(N);
    for (const auto& [p, e] : numthy::factor(N)) {
        (void)e;
        pre *= 1.0 + 1.0 / static_cast<double>(p);
    }
    PeterssonResult out;
    out.value = pre * residue;
    out.method = "residue-formula";
    out.error_estimate = std::abs(out.value) * 1e-14;
    return out;
}

PeterssonResult psp_vl_sp(const VlSpInput& input, double consistency_tol) {
    size_t R = input.constants.size();
    if (input.xi_family.size() != R || input.widths.size() != R)
        throw std::domain_error("psp_vl_sp: inconsistent input sizes");
    // consistency: b = sum_r c^(r) w^(r) conj(xi^(r)(0)), xi(0) via Richardson limit
    Complex lhs{0.0, 0.0};
    for (size_t r = 0; r < R; ++r) {
        if (input.constants[r] == Complex{0.0, 0.0}) continue;
        double e1 = 1e-5;
        Complex x1 = input.xi_family[r]({e1, 0.0});
        Complex x2 = input.xi_family[r]({e1 / 2.0, 0.0});
        Complex xi0 = 2.0 * x2 - x1;
        lhs += input.constants[r] * static_cast<double>(input.widths[r]) * std::conj(xi0);
    }
    double scale = std::max(1.0, std::abs(input.b));
    if (std::abs(lhs - input.b) > consistency_tol * scale)
        throw std::domain_error("psp_vl_sp: cusp-data consistency violated (wrong cusp data)");
    Complex acc{0.0, 0.0};
    for (size_t r = 0; r < R; ++r) {
        if (input.constants[r] == Complex{0.0, 0.0}) continue;
        Complex dxi = analytic::log_derivative(input.xi_family[r], {0.0, 0.0}, 1e-5);
        acc -= input.constants[r] * static_cast<double>(input.widths[r]) * std::conj(dxi);
    }
    PeterssonResult out;
    out.value = acc;
    out.method = "vl-sp";
    out.error_estimate = 1e-9 * std::max(1.0, std::abs(acc));
    return out;
}

namespace {

// scalar products of the level-4 half-integral Eisenstein pair:
// closed forms for k <= 1, generic vl-sp evaluation for k >= 2.
Complex eis_self_product(int k) {
    double zp1 = std::real(analytic::log_derivative(
        [](Complex s) { return analytic::zeta_c(s); }, {-1.0, 0.0}, 1e-4));
    if (k == 0)
        return -kPi / (3.0 * kLog2) *
               (-2.0 + 5.0 * kLog2 + 2.0 * std::log(kPi) + 24.0 * zp1);
    if (k == 1)
        return 2.0 / (3.0 * kPi) * (3.0 - 20.0 * kLog2 - 6.0 * std::log(kPi) - 72.0 * zp1);
    VlSpInput in;
    in.constants = {Complex{1.0, 0.0}};
    in.widths = {1};
    in.xi_family = {[k](Complex s) { return eisen::xi_half_quarter(k, s); }};
    in.b = {0.0, 0.0};
    return psp_vl_sp(in).value;
}

Complex eis_cross_product(int k) {
    // <E^rho(.,0), E(.,0)>
    double zp1 = std::real(analytic::log_derivative(
        [](Complex s) { return analytic::zeta_c(s); }, {-1.0, 0.0}, 1e-4));
    if (k == 0)
        return Complex{1.0, -1.0} * kPi / (3.0 * kLog2) *
               (-2.0 + 7.0 * kLog2 + 2.0 * std::log(kPi) + 24.0 * zp1);
    if (k == 1)
        return Complex{4.0, 4.0} / (3.0 * kPi) *
               (3.0 - 8.0 * kLog2 - 6.0 * std::log(kPi) - 72.0 * zp1);
    // -(-1)^{k-1} i * 4 * d/ds conj(xi^(0))(0)
    Complex dxi = analytic::log_derivative(
        [k](Complex s) { return eisen::xi_half_zero(k, s); }, {0.0, 0.0}, 1e-5);
    double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    return -sgn * Complex{0.0, 1.0} * 4.0 * std::conj(dxi);
}

double eis_flip_extra(int k) {
    // additional term in 2^{-2k-1} <E^rho, E^rho> = <E,E> + extra
    if (k == 0) return 2.0 * kPi / 3.0;
    if (k == 1) return 4.0 * kLog2 / kPi;
    return 0.0;
}

}  // namespace

PeterssonResult theta_power_petersson(int k) {
    // theta^{2k+1} is the holomorphic combination E - kappa E^rho; expand the
    // product through the pairwise Eisenstein scalar products.
    Complex EE = eis_self_product(k);
    Complex RE = eis_cross_product(k);
    Complex ER = std::conj(RE);
    Complex RR = std::pow(2.0, 2.0 * k + 1.0) * (EE + eis_flip_extra(k));
    Complex kap = eisen::scriptE_kappa(k).to_complex();
    PeterssonResult out;
    out.value = EE - std::conj(kap) * ER - kap * RE + std::norm(kap) * RR;
    out.method = "vl-sp";
    out.error_estimate = 1e-8 * std::max(1.0, std::abs(out.value));
    return out;
}

// ---------------------------------------------------------------------------
// numeric Petersson product at level 4
// ---------------------------------------------------------------------------

namespace {

struct Mat2 {
    double a, b, c, d;
    Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
};

// Gauss-Legendre nodes/weights on [-1,1], n = 12
constexpr int kGL = 12;
constexpr double kGLx[kGL] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGLw[kGL] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
    0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
    0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// adaptive 2D panel integration of fn over [x0,x1]x[u0,u1]
double integrate_panel(const std::function<double(double, double)>& fn, double x0, double x1,
                       double u0, double u1, double tol, int depth) {
    auto gl2 = [&](double ax, double bx, double au, double bu) {
        double hx = (bx - ax) / 2, cx = (ax + bx) / 2;
        double hu = (bu - au) / 2, cu = (au + bu) / 2;
        double acc = 0.0;
        for (int i = 0; i < kGL; ++i)
            for (int j = 0; j < kGL; ++j)
                acc += kGLw[i] * kGLw[j] * fn(cx + hx * kGLx[i], cu + hu * kGLx[j]);
        return acc * hx * hu;
    };
    double whole = gl2(x0, x1, u0, u1);
    double xm = (x0 + x1) / 2, um = (u0 + u1) / 2;
    double split = gl2(x0, xm, u0, um) + gl2(xm, x1, u0, um) + gl2(x0, xm, um, u1) +
                   gl2(xm, x1, um, u1);
    if (std::abs(split - whole) < tol || depth >= 12) return split;
    double q = 0.0;
    q += integrate_panel(fn, x0, xm, u0, um, tol / 4, depth + 1);
    q += integrate_panel(fn, xm, x1, u0, um, tol / 4, depth + 1);
    q += integrate_panel(fn, x0, xm, um, u1, tol / 4, depth + 1);
    q += integrate_panel(fn, xm, x1, um, u1, tol / 4, depth + 1);
    return q;
}

// integral over the truncated fundamental domain of Gamma_0(4), realized as
// 6 SL2(Z)-translates of the standard triangle, each cut at height T.
double domain_integral(const std::function<double(Complex)>& phi, double T, double tol) {
    static const Mat2 cosets[6] = {
        {1, 0, 0, 1},    // identity (cusp infinity)
        {0, -1, 1, 0},   // S            } the four translates at cusp 0
        {0, -1, 1, 1},   // S T
        {0, -1, 1, 2},   // S T^2
        {0, -1, 1, 3},   // S T^3
        {1, 0, 2, 1},    // cusp 1/2
    };
    double total = 0.0;
    for (const auto& A : cosets) {
        auto fn = [&](double x, double u) {
            double ylo = std::sqrt(std::max(1e-12, 1.0 - x * x));
            double y = ylo + u * (T - ylo);
            Complex z{x, y};
            Complex w = A.apply(z);
            return phi(w) * (T - ylo) / (y * y);
        };
        total += integrate_panel(fn, -0.5, 0.5, 0.0, 1.0, tol / 6.0, 0);
    }
    return total;
}

}  // namespace

PeterssonResult psp_numeric(const FourierSeries& f, const FourierSeries& g,
                            HalfIntWeight l, double T, double tol) {
    if (f.level() != 4 || g.level() != 4)
        throw std::domain_error("psp_numeric: level-4 forms only (coset list is hard-coded)");
    double lv = l.value();
    // pointwise values through the q-expansions would be generic; here both
    // inputs are theta powers, evaluated by eval_theta_pow
    int kf = f.weight().twice_weight, kg = g.weight().twice_weight;
    auto phi = [&](Complex w) {
        Complex fw = forms::eval_theta_pow(kf, w);
        Complex gw = forms::eval_theta_pow(kg, w);
        return std::pow(w.imag(), lv) * std::real(fw * std::conj(gw));
    };
    auto run = [&](double TT) {
        double integral = domain_integral(phi, TT, tol * 0.05);
        // subtract Q^{(r)}(T) = w a0 conj(b0) T^{l-1}/(l-1); for l < 1 this
        // restores the convergent tail
        auto sys = forms::cusp_system(4);
        double corr = 0.0;
        for (size_t j = 0; j < sys.cusps.size(); ++j) {
            Complex a0 = f.cusp_constant(sys.cusps[j]);
            Complex b0 = g.cusp_constant(sys.cusps[j]);
            double c = std::real(a0 * std::conj(b0));
            corr += static_cast<double>(sys.widths[j]) * c * std::pow(TT, lv - 1.0) / (lv - 1.0);
        }
        return integral - corr;
    };
    double v1 = run(T);
    double v2 = run(2.0 * T);
    PeterssonResult out;
    out.value = {v2, 0.0};
    out.method = "numeric-integration";
    out.error_estimate = std::abs(v2 - v1);
    return out;
}

}  // namespace rankinlab::rankin
