#include "rankinlab/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankinlab::forms {

namespace {
constexpr double kPi = 3.141592653589793238462643383280;

Complex e_of(double x) { return {std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x)}; }
}  // namespace

// ---------------------------------------------------------------------------
// Cusp system via T-orbits on P^1(Z/N)
// ---------------------------------------------------------------------------

namespace {

// canonical representative of the projective class of (c:d) mod N
std::pair<int64_t, int64_t> p1_normalize(int64_t c, int64_t d, int64_t N) {
    c = ((c % N) + N) % N;
    d = ((d % N) + N) % N;
    if (N == 1) return {0, 0};
    std::pair<int64_t, int64_t> best{-1, -1};
    for (int64_t u = 1; u < N; ++u) {
        if (std::gcd(u, N) != 1) continue;
        std::pair<int64_t, int64_t> cand{u * c % N, u * d % N};
        if (best.first < 0 || cand < best) best = cand;
    }
    return best;
}

// key of the Gamma_0(N)-class of the cusp a/c: the minimal p1_normalize over
// the T-orbit (c : d + t c), where (c,d) is the bottom row of a matrix with
// first column (a, c)^T.
std::pair<int64_t, int64_t> cusp_key(int64_t a, int64_t c, int64_t N) {
    // reduce a/c; c == 0 encodes infinity = 1/0
    if (c < 0) { c = -c; a = -a; }
    int64_t g = std::gcd(std::abs(a), c);
    if (g > 1) { a /= g; c /= g; }
    if (c == 0) a = 1;
    // solve a*d - b*c = 1 for (b, d)
    int64_t d = 0;
    if (c == 0) {
        d = 1;
    } else if (c == 1) {
        d = 0;
    } else {
        // solve a*d = 1 (mod c) by extended gcd
        int64_t x0 = 1, x1 = 0, r0 = ((a % c) + c) % c, r1 = c;
        while (r1 != 0) {
            int64_t q = r0 / r1;
            r0 -= q * r1; std::swap(r0, r1);
            x0 -= q * x1; std::swap(x0, x1);
        }
        d = ((x0 % c) + c) % c;
    }
    std::pair<int64_t, int64_t> best{-1, -1};
    for (int64_t t = 0; t < N; ++t) {
        auto cand = p1_normalize(c, d + t * c, N);
        if (best.first < 0 || cand < best) best = cand;
    }
    return best;
}

}  // namespace

int64_t CuspSystem::index_of(const Cusp& c) const {
    for (size_t j = 0; j < cusps.size(); ++j)
        if (cusps[j] == c) return static_cast<int64_t>(j);
    throw std::domain_error("CuspSystem: cusp is not a representative");
}

CuspSystem cusp_system(int64_t N) {
    if (N < 1) throw std::domain_error("cusp_system: N must be positive");
    CuspSystem sys;
    sys.level = N;
    std::vector<std::pair<int64_t, int64_t>> seen;
    for (int64_t M : numthy::divisors(N)) {
        for (int64_t i = 0; i < std::max<int64_t>(M, 1); ++i) {
            if (std::gcd(i, M) != 1 && !(M == 1 && i == 0)) continue;
            if (M == 1 && i != 0) continue;  // 0/1 represents the M=1 class
            auto key = cusp_key(i, M, N);
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            Cusp c{i, M};
            sys.cusps.push_back(c);
            sys.widths.push_back(N / std::gcd(M * M, N));
            // scaling matrix A = (i b; M d), i*d - b*M = 1
            int64_t b = 0, d = 0;
            if (M == 1 && i == 0) { b = -1; d = 1; }  // S = (0 -1; 1 0) at 0/1... i*d-b*M = 0*1-(-1)*1 = 1
            else {
                // egcd(i, M): find d, b with i*d - b*M = 1
                int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1, r0 = i, r1 = M;
                while (r1 != 0) {
                    int64_t q = r0 / r1;
                    r0 -= q * r1; std::swap(r0, r1);
                    x0 -= q * x1; std::swap(x0, x1);
                    y0 -= q * y1; std::swap(y0, y1);
                }
                // r0 = gcd = 1 = i*x0 + M*y0
                d = x0;
                b = -y0;
            }
            sys.scaling.push_back({i, b, M, d});
        }
    }
    std::vector<size_t> order(sys.cusps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return sys.cusps[a] < sys.cusps[b]; });
    CuspSystem out;
    out.level = N;
    for (size_t j : order) {
        out.cusps.push_back(sys.cusps[j]);
        out.widths.push_back(sys.widths[j]);
        out.scaling.push_back(sys.scaling[j]);
    }
    return out;
}

Cusp cusp_reduce(int64_t a, int64_t c, int64_t N) {
    auto key = cusp_key(a, c, N);
    auto sys = cusp_system(N);
    for (const auto& rep : sys.cusps)
        if (cusp_key(rep.i, rep.M, N) == key) return rep;
    throw std::logic_error("cusp_reduce: no representative matched");
}

bool cusp_equivalent(int64_t a1, int64_t c1, int64_t a2, int64_t c2, int64_t N) {
    return cusp_key(a1, c1, N) == cusp_key(a2, c2, N);
}

// ---------------------------------------------------------------------------
// Representation numbers
// ---------------------------------------------------------------------------

std::vector<int64_t> rep_numbers(const DiagonalQuadraticForm& Q, int64_t n_max) {
    if (n_max < 0) throw std::domain_error("rep_numbers: n_max < 0");
    for (int64_t c : Q.coeffs)
        if (c < 1) throw std::domain_error("rep_numbers: coefficients must be >= 1");
    std::vector<int64_t> table(n_max + 1, 0);
    table[0] = 1;
    for (int64_t c : Q.coeffs) {
        std::vector<int64_t> next(n_max + 1, 0);
        for (int64_t x = 0; c * x * x <= n_max; ++x) {
            int64_t q = c * x * x;
            int64_t mult = (x == 0) ? 1 : 2;  // +-x
            for (int64_t n = q; n <= n_max; ++n) {
                if (table[n - q] == 0) continue;
                __int128 v = (__int128)next[n] + (__int128)mult * table[n - q];
                if (v > INT64_MAX) throw std::overflow_error("rep_numbers: overflow");
                next[n] = static_cast<int64_t>(v);
            }
        }
        table = std::move(next);
    }
    return table;
}

std::vector<int64_t> theta_power_table(int k, int64_t n_max) {
    if (k < 1) throw std::domain_error("theta_power_table: k must be >= 1");
    std::vector<int64_t> cur(n_max + 1, 0);
    cur[0] = 1;
    int64_t s = 1;
    while (s * s <= n_max) { cur[s * s] = 2; ++s; }
    if (k == 1) return cur;
    std::vector<int64_t> out = cur;
    for (int j = 2; j <= k; ++j) {
        std::vector<int64_t> next(n_max + 1, 0);
        for (int64_t a = 0; a * a <= n_max; ++a) {
            int64_t mult = (a == 0) ? 1 : 2;
            int64_t aa = a * a;
            for (int64_t n = aa; n <= n_max; ++n) {
                __int128 v = (__int128)next[n] + (__int128)mult * out[n - aa];
                if (v > INT64_MAX) throw std::overflow_error("theta_power_table: overflow");
                next[n] = static_cast<int64_t>(v);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<double> theta_power_table_real(int k, int64_t n_max) {
    if (k < 1) throw std::domain_error("theta_power_table_real: k must be >= 1");
    std::vector<double> out(n_max + 1, 0.0);
    out[0] = 1.0;
    for (int64_t s = 1; s * s <= n_max; ++s) out[s * s] = 2.0;
    for (int j = 2; j <= k; ++j) {
        std::vector<double> next(n_max + 1, 0.0);
        for (int64_t a = 0; a * a <= n_max; ++a) {
            double mult = (a == 0) ? 1.0 : 2.0;
            int64_t aa = a * a;
            for (int64_t n = aa; n <= n_max; ++n) next[n] += mult * out[n - aa];
        }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// FourierSeries
// ---------------------------------------------------------------------------

FourierSeries::FourierSeries(int64_t level, HalfIntWeight weight,
                             std::optional<DirichletCharacter> character,
                             std::function<NumericValue(int64_t)> provider,
                             std::map<Cusp, Complex> cusp_constants)
    : level_(level), weight_(weight), character_(std::move(character)),
      provider_(std::move(provider)), cusp_constants_(std::move(cusp_constants)) {}

NumericValue FourierSeries::coefficient(int64_t n) const {
    if (n < 0) throw std::domain_error("FourierSeries: n must be >= 0");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (n < static_cast<int64_t>(cache_.size()) && cache_[n]) return *cache_[n];
    }
    NumericValue v = provider_(n);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (n >= static_cast<int64_t>(cache_.size())) cache_.resize(n + 1);
        cache_[n] = v;
    }
    return v;
}

Complex FourierSeries::cusp_constant(const Cusp& c) const {
    auto it = cusp_constants_.find(c);
    if (it == cusp_constants_.end())
        throw std::domain_error("FourierSeries: no cusp constant stored for this cusp");
    return it->second;
}

FourierSeries FourierSeries::scaled(Complex c) const {
    auto prov = provider_;
    std::map<Cusp, Complex> cc;
    for (const auto& [cusp, v] : cusp_constants_) cc[cusp] = c * v;
    return FourierSeries(level_, weight_, character_,
                         [prov, c](int64_t n) { return NumericValue(c * prov(n).to_complex()); },
                         std::move(cc));
}

FourierSeries theta_series(int k) {
    if (k < 1) throw std::domain_error("theta_series: k must be >= 1");
    auto table = std::make_shared<std::vector<int64_t>>();
    auto table_mutex = std::make_shared<std::mutex>();
    auto provider = [k, table, table_mutex](int64_t n) {
        std::lock_guard<std::mutex> lock(*table_mutex);
        if (n >= static_cast<int64_t>(table->size())) {
            int64_t grow = std::max<int64_t>(n + 1, 1 << 10);
            *table = theta_power_table(k, grow * 2);
        }
        return NumericValue(ExactRational((*table)[n]));
    };
    std::map<Cusp, Complex> cc;
    cc[Cusp{1, 4}] = {1.0, 0.0};                                       // infinity
    cc[Cusp{0, 1}] = std::pow(2.0, -k / 2.0) * e_of(-k / 8.0);         // cusp 0
    cc[Cusp{1, 2}] = {0.0, 0.0};                                       // cusp 1/2
    auto chi = numthy::kronecker_chi(-4).pow(k / 2).induce(4);
    return FourierSeries(4, HalfIntWeight{k}, chi, provider, std::move(cc));
}

FourierSeries theta_twist(const DirichletCharacter& chi) {
    if (chi.parity() != 1) throw std::domain_error("theta_twist: character must be even");
    auto chi_copy = chi;
    auto provider = [chi_copy](int64_t m) {
        if (m == 0) {
            // chi(0) convention: 1 for the modulus-1 character, else 0
            return NumericValue(ExactRational(chi_copy.modulus() == 1 ? 1 : 0));
        }
        int64_t r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(m))));
        while (r * r > m) --r;
        while ((r + 1) * (r + 1) <= m) ++r;
        if (r * r != m) return NumericValue(ExactRational(0));
        return NumericValue(2.0 * chi_copy.value(r));
    };
    int64_t f = chi.conductor();
    std::map<Cusp, Complex> cc;
    cc[Cusp{1, 4 * f * f}] = {1.0, 0.0};
    return FourierSeries(4 * f * f, HalfIntWeight{1}, chi, provider, std::move(cc));
}

FourierSeries theta_twist_odd(const DirichletCharacter& chi) {
    if (chi.parity() != -1) throw std::domain_error("theta_twist_odd: character must be odd");
    auto chi_copy = chi;
    auto provider = [chi_copy](int64_t m) {
        if (m == 0) return NumericValue(ExactRational(0));
        int64_t r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(m))));
        while (r * r > m) --r;
        while ((r + 1) * (r + 1) <= m) ++r;
        if (r * r != m) return NumericValue(ExactRational(0));
        return NumericValue(2.0 * static_cast<double>(r) * chi_copy.value(r));
    };
    int64_t f = chi.conductor();
    std::map<Cusp, Complex> cc;
    cc[Cusp{1, 4 * f * f}] = {0.0, 0.0};  // cusp form
    return FourierSeries(4 * f * f, HalfIntWeight{3}, chi, provider, std::move(cc));
}

// ---------------------------------------------------------------------------
// theta evaluation
// ---------------------------------------------------------------------------

namespace {

Complex theta_q_series(Complex z) {
    // theta(z) = 1 + 2 sum q^{n^2}; terms decay like exp(-2 pi n^2 y)
    double y = z.imag();
    int nmax = static_cast<int>(std::ceil(std::sqrt(40.0 / (2.0 * kPi * y)))) + 2;
    Complex q2pi = Complex{0.0, 2.0 * kPi} * z;
    Complex acc{1.0, 0.0};
    for (int n = nmax; n >= 1; --n)
        acc += 2.0 * std::exp(q2pi * static_cast<double>(n) * static_cast<double>(n));
    return acc;
}

}  // namespace

Complex eval_theta(Complex z) {
    if (!(z.imag() > 0.0)) throw std::domain_error("eval_theta: Im z must be positive");
    Complex mult{1.0, 0.0};
    for (int iter = 0; iter < 64; ++iter) {
        double xr = std::round(z.real());
        z -= xr;  // theta has period 1
        if (z.imag() >= 0.5) break;
        // w = -1/(4z): Im w = y / (4|z|^2); shuttle only if it helps
        double norm = std::norm(z);
        double imw = z.imag() / (4.0 * norm);
        if (imw <= z.imag() * 1.0000001) break;
        // theta(z) = theta(-1/(4z)) / sqrt(-2iz)
        Complex root = std::sqrt(Complex{0.0, -2.0} * z);
        mult /= root;
        z = -1.0 / (4.0 * z);
    }
    return mult * theta_q_series(z);
}

Complex eval_theta_pow(int k, Complex z) {
    Complex t = eval_theta(z);
    Complex acc{1.0, 0.0};
    for (int i = 0; i < k; ++i) acc *= t;
    return acc;
}

}  // namespace rankinlab::forms
