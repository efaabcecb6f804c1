#include "rankinlab/numthy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankinlab::numthy {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Factorization factor(int64_t n) {
    if (n < 1) throw std::domain_error("factor: n must be positive");
    Factorization out;
    auto strip = [&](int64_t p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.push_back({p, e});
        }
    };
    strip(2); strip(3); strip(5);
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int64_t p = 7;
    int w = 0;
    while (p <= n / p) {
        strip(p);
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int64_t euler_phi(int64_t n) {
    int64_t r = 1;
    for (const auto& [p, e] : factor(n)) {
        int64_t pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        r *= pe * (p - 1);
    }
    return r;
}

int mobius(int64_t n) {
    auto f = factor(n);
    for (const auto& pp : f)
        if (pp.exponent > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

int64_t radical(int64_t n) {
    int64_t r = 1;
    for (const auto& pp : factor(n)) r *= pp.prime;
    return r;
}

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }
int64_t lcm64(int64_t a, int64_t b) { return std::lcm(a, b); }

int valuation(int64_t n, int64_t p) {
    if (n == 0) throw std::domain_error("valuation: n = 0");
    n = std::abs(n);
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> out{1};
    for (const auto& [p, e] : factor(n)) {
        size_t sz = out.size();
        int64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    auto f = factor(n);
    return f.size() == 1 && f[0].exponent == 1;
}

int kronecker_symbol(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int t = 0;
    while (n % 2 == 0) { n /= 2; ++t; }
    if (t > 0) {
        if (a % 2 == 0) return 0;
        int64_t am8 = ((a % 8) + 8) % 8;
        if (t % 2 == 1 && (am8 == 3 || am8 == 5)) sign = -sign;
    }
    // Jacobi symbol (a|n) for odd n > 0 by reciprocity.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) sign = -sign;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        a %= n;
    }
    return (n == 1) ? sign : 0;
}

int64_t squarefree_core(int64_t a) {
    if (a == 0) throw std::domain_error("squarefree_core: a = 0");
    int64_t s = 1;
    for (const auto& [p, e] : factor(std::abs(a)))
        if (e % 2 == 1) s *= p;
    return a > 0 ? s : -s;
}

int64_t fundamental_discriminant(int64_t a) {
    int64_t s = squarefree_core(a);
    int64_t m4 = ((s % 4) + 4) % 4;
    return (m4 == 1) ? s : 4 * s;
}

// ---------------------------------------------------------------------------
// DirichletCharacter
// ---------------------------------------------------------------------------

DirichletCharacter::DirichletCharacter(int64_t modulus, int64_t order, std::vector<int32_t> exps)
    : modulus_(modulus), order_(order), exps_(std::move(exps)) {
    if (modulus_ < 1 || static_cast<int64_t>(exps_.size()) != modulus_)
        throw std::invalid_argument("DirichletCharacter: bad table size");
}

DirichletCharacter DirichletCharacter::principal(int64_t N) {
    if (N < 1) throw std::domain_error("principal: N must be positive");
    std::vector<int32_t> exps(N, -1);
    for (int64_t i = 0; i < N; ++i)
        if (std::gcd(i, N) == 1) exps[i] = 0;
    if (N == 1) exps[0] = 0;
    return DirichletCharacter(N, 1, std::move(exps));
}

int32_t DirichletCharacter::exponent_at(int64_t n) const {
    int64_t r = ((n % modulus_) + modulus_) % modulus_;
    return exps_[r];
}

Complex DirichletCharacter::value(int64_t n) const {
    int32_t e = exponent_at(n);
    if (e < 0) return {0.0, 0.0};
    if (e == 0) return {1.0, 0.0};
    if (2 * e == order_) return {-1.0, 0.0};
    double t = kTwoPi * static_cast<double>(e) / static_cast<double>(order_);
    return {std::cos(t), std::sin(t)};
}

int DirichletCharacter::value_real(int64_t n) const {
    int32_t e = exponent_at(n);
    if (e < 0) return 0;
    if (e == 0) return 1;
    if (2 * e == order_) return -1;
    throw std::logic_error("value_real: character is not real at this argument");
}

bool DirichletCharacter::is_principal() const {
    for (int64_t i = 0; i < modulus_; ++i)
        if (exps_[i] > 0) return false;
    return true;
}

bool DirichletCharacter::is_real() const {
    for (int64_t i = 0; i < modulus_; ++i)
        if (exps_[i] > 0 && 2 * exps_[i] != order_) return false;
    return true;
}

int DirichletCharacter::parity() const {
    if (modulus_ <= 2) return 1;
    return exponent_at(modulus_ - 1) == 0 ? 1 : -1;  // chi(-1) is always +-1
}

int64_t DirichletCharacter::conductor() const {
    if (conductor_cache_) return conductor_cache_;
    for (int64_t d : divisors(modulus_)) {
        bool ok = true;
        for (int64_t u = 1; u < modulus_ && ok; u += d) {
            // u = 1 mod d; require chi(u) = 1 whenever gcd(u, N) = 1
            if (std::gcd(u, modulus_) == 1 && exponent_at(u) != 0) ok = false;
        }
        if (ok) {
            conductor_cache_ = d;
            return d;
        }
    }
    conductor_cache_ = modulus_;
    return modulus_;
}

DirichletCharacter DirichletCharacter::primitive() const {
    int64_t f = conductor();
    if (f == modulus_) return *this;
    std::vector<int32_t> exps(f, -1);
    for (int64_t u = 0; u < f; ++u) {
        if (std::gcd(u, f) != 1 && f > 1) continue;
        // lift u mod f to u' with gcd(u', N) = 1
        int64_t up = u;
        while (std::gcd(up, modulus_) != 1) up += f;
        exps[u] = exponent_at(up);
    }
    if (f == 1) exps[0] = 0;
    return DirichletCharacter(f, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::induce(int64_t M) const {
    if (M % modulus_ != 0) throw std::domain_error("induce: M must be a multiple of the modulus");
    std::vector<int32_t> exps(M, -1);
    for (int64_t u = 0; u < M; ++u)
        if (std::gcd(u, M) == 1) exps[u] = exponent_at(u);
    if (M == 1) exps[0] = 0;
    return DirichletCharacter(M, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::p_part(int64_t p) const {
    int v = valuation(modulus_, p);
    if (v == 0) return DirichletCharacter::principal(1);
    int64_t q = 1;
    for (int i = 0; i < v; ++i) q *= p;
    int64_t rest = modulus_ / q;
    std::vector<int32_t> exps(q, -1);
    for (int64_t u = 0; u < q; ++u) {
        if (std::gcd(u, q) != 1) continue;
        // CRT: u' = u mod q, u' = 1 mod rest
        int64_t up = u;
        while (up % q != u % q || (rest > 1 && up % rest != 1)) {
            up += q;
            if (up > modulus_ * 2) throw std::logic_error("p_part: CRT lift failed");
        }
        exps[u] = exponent_at(up);
    }
    return DirichletCharacter(q, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    if (modulus_ != other.modulus_)
        throw std::domain_error("character product: moduli differ (induce first)");
    int64_t L = std::lcm(order_, other.order_);
    std::vector<int32_t> exps(modulus_, -1);
    for (int64_t i = 0; i < modulus_; ++i) {
        if (exps_[i] < 0 || other.exps_[i] < 0) continue;
        int64_t e = (static_cast<int64_t>(exps_[i]) * (L / order_) +
                     static_cast<int64_t>(other.exps_[i]) * (L / other.order_)) % L;
        exps[i] = static_cast<int32_t>(e);
    }
    // reduce order to the actual element order
    int64_t g = L;
    for (int64_t i = 0; i < modulus_; ++i)
        if (exps[i] > 0) g = std::gcd(g, static_cast<int64_t>(exps[i]));
    if (g > 1) {
        for (auto& e : exps)
            if (e > 0) e = static_cast<int32_t>(e / g);
        L /= g;
    }
    return DirichletCharacter(modulus_, L, std::move(exps));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<int32_t> exps(exps_);
    for (auto& e : exps)
        if (e > 0) e = static_cast<int32_t>(order_ - e);
    return DirichletCharacter(modulus_, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::pow(int64_t k) const {
    k %= order_;
    if (k < 0) k += order_;
    std::vector<int32_t> exps(modulus_, -1);
    for (int64_t i = 0; i < modulus_; ++i)
        if (exps_[i] >= 0) exps[i] = static_cast<int32_t>((exps_[i] * k) % order_);
    int64_t L = order_;
    int64_t g = L;
    for (int64_t i = 0; i < modulus_; ++i)
        if (exps[i] > 0) g = std::gcd(g, static_cast<int64_t>(exps[i]));
    if (g > 1) {
        for (auto& e : exps)
            if (e > 0) e = static_cast<int32_t>(e / g);
        L /= g;
    }
    return DirichletCharacter(modulus_, L, std::move(exps));
}

bool DirichletCharacter::operator==(const DirichletCharacter& other) const {
    if (modulus_ != other.modulus_) return false;
    for (int64_t i = 0; i < modulus_; ++i) {
        int32_t a = exps_[i], b = other.exps_[i];
        if ((a < 0) != (b < 0)) return false;
        if (a < 0) continue;
        // compare as fractions a/order vs b/order'
        if (static_cast<int64_t>(a) * other.order_ != static_cast<int64_t>(b) * order_) return false;
    }
    return true;
}

DirichletCharacter kronecker_chi(int64_t a) {
    if (a == 0) throw std::domain_error("kronecker_chi: a = 0");
    int64_t D = fundamental_discriminant(a);
    int64_t M = std::lcm(std::abs(D), radical(std::abs(a)));
    if (M == 0) M = 1;
    std::vector<int32_t> exps(M, -1);
    for (int64_t i = 0; i < M; ++i) {
        if (std::gcd(i, M) != 1 && M > 1) continue;
        int v = kronecker_symbol(D, i);
        if (v == 1) exps[i] = 0;
        else if (v == -1) exps[i] = 1;
    }
    if (M == 1) exps[0] = 0;
    return DirichletCharacter(M, 2, std::move(exps));
}

DirichletCharacter kronecker_chi_vee(int64_t a) {
    if (a % 2 == 0) throw std::domain_error("kronecker_chi_vee: a must be odd");
    int64_t m4 = ((a % 4) + 4) % 4;
    return kronecker_chi(m4 == 1 ? a : -a);
}

std::vector<DirichletCharacter> char_group(int64_t N) {
    if (N < 1) throw std::domain_error("char_group: N must be positive");
    // cyclic decomposition of (Z/N)^*: for each factor, a generator and its order
    struct Cyc {
        int64_t gen;   // generator lifted mod N via CRT
        int64_t ord;
    };
    std::vector<Cyc> cycs;
    auto crt_lift = [&](int64_t g, int64_t q) {
        // x = g mod q, x = 1 mod N/q
        int64_t rest = N / q;
        for (int64_t x = 1; x <= N; ++x)
            if (x % q == g % q && (rest == 1 || x % rest == 1)) return x % N;
        throw std::logic_error("char_group: CRT lift failed");
    };
    for (const auto& [p, e] : factor(N)) {
        int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        if (p == 2) {
            if (e >= 2) cycs.push_back({crt_lift(q - 1, q), 2});  // -1 mod 2^e
            if (e >= 3) {
                int64_t ord = q / 4;  // order of 5 mod 2^e
                cycs.push_back({crt_lift(5, q), ord});
            }
        } else {
            // find a primitive root mod p^e
            int64_t phi = (q / p) * (p - 1);
            auto divs = divisors(phi);
            int64_t g = 0;
            for (int64_t cand = 2; cand < q; ++cand) {
                if (std::gcd(cand, q) != 1) continue;
                bool prim = true;
                for (int64_t d : divs) {
                    if (d == phi) continue;
                    // cand^d mod q
                    int64_t r = 1, b = cand % q, ex = d;
                    while (ex) {
                        if (ex & 1) r = (__int128)r * b % q;
                        b = (__int128)b * b % q;
                        ex >>= 1;
                    }
                    if (r == 1) { prim = false; break; }
                }
                if (prim) { g = cand; break; }
            }
            if (!g) throw std::logic_error("char_group: no primitive root found");
            cycs.push_back({crt_lift(g, q), phi});
        }
    }
    // discrete logs of every unit w.r.t. the generators
    int64_t phiN = euler_phi(N);
    std::vector<std::vector<int64_t>> dlog(N);
    {
        std::vector<int64_t> idx(cycs.size(), 0);
        // enumerate products gen_j^{i_j}
        std::vector<int64_t> unit_val;
        std::vector<std::vector<int64_t>> unit_idx;
        int64_t total = 1;
        for (const auto& c : cycs) total *= c.ord;
        for (int64_t t = 0; t < total; ++t) {
            int64_t rem = t, v = 1;
            std::vector<int64_t> ix(cycs.size());
            for (size_t j = 0; j < cycs.size(); ++j) {
                ix[j] = rem % cycs[j].ord;
                rem /= cycs[j].ord;
                int64_t b = cycs[j].gen % N, ex = ix[j];
                while (ex) {
                    if (ex & 1) v = (__int128)v * b % N;
                    b = (__int128)b * b % N;
                    ex >>= 1;
                }
            }
            dlog[v] = ix;
        }
        (void)phiN;
        (void)idx;
        (void)unit_val;
        (void)unit_idx;
    }
    // build characters: every exponent tuple (a_j mod ord_j)
    int64_t L = 1;
    for (const auto& c : cycs) L = std::lcm(L, c.ord);
    std::vector<DirichletCharacter> out;
    int64_t total = 1;
    for (const auto& c : cycs) total *= c.ord;
    out.reserve(total);
    for (int64_t t = 0; t < total; ++t) {
        int64_t rem = t;
        std::vector<int64_t> a(cycs.size());
        for (size_t j = 0; j < cycs.size(); ++j) {
            a[j] = rem % cycs[j].ord;
            rem /= cycs[j].ord;
        }
        std::vector<int32_t> exps(N, -1);
        for (int64_t u = 0; u < N; ++u) {
            if (N > 1 && std::gcd(u, N) != 1) continue;
            if (N == 1 && u != 0) continue;
            int64_t e = 0;
            const auto& ix = dlog[N == 1 ? 0 : u];
            for (size_t j = 0; j < cycs.size(); ++j)
                e = (e + a[j] * ix[j] % L * (L / cycs[j].ord)) % L;
            exps[u] = static_cast<int32_t>(((e % L) + L) % L);
        }
        if (N == 1) exps[0] = 0;
        // reduce to element order
        int64_t Lr = L, g = L;
        for (int64_t i = 0; i < N; ++i)
            if (exps[i] > 0) g = std::gcd(g, static_cast<int64_t>(exps[i]));
        if (g > 1) {
            for (auto& e : exps)
                if (e > 0) e = static_cast<int32_t>(e / g);
            Lr = L / g;
        }
        if (Lr == 0) Lr = 1;
        out.emplace_back(N, Lr, std::move(exps));
    }
    return out;
}

int64_t e_chi(const DirichletCharacter& chi) {
    int64_t f = chi.conductor(), r = f;
    for (const auto& [p, e] : factor(chi.modulus())) {
        (void)e;
        if (f % p != 0) r *= p;
    }
    return r;
}

int64_t e_chi_prime(const DirichletCharacter& chi) {
    int64_t f = chi.conductor(), r = f;
    for (const auto& [p, e] : factor(chi.modulus())) {
        (void)e;
        if (f % p != 0) r *= p * p;
    }
    return r;
}

Complex gauss_sum_direct(const DirichletCharacter& chi, int64_t m) {
    int64_t N = chi.modulus();
    Complex s{0.0, 0.0};
    for (int64_t i = 0; i < N; ++i) {
        Complex v = chi.value(i);
        if (v == Complex{0.0, 0.0}) continue;
        double t = kTwoPi * static_cast<double>(((i * m) % N + N) % N) / static_cast<double>(N);
        s += v * Complex{std::cos(t), std::sin(t)};
    }
    if (N == 1) s = Complex{1.0, 0.0};
    return s;
}

Complex gauss_sum_formula(const DirichletCharacter& chi, int64_t m) {
    int64_t N = chi.modulus();
    auto prim = chi.primitive();
    int64_t f = prim.modulus();
    Complex tau = gauss_sum_direct(prim, 1);
    int64_t ratio = e_chi(chi) / f;  // e_chi * f^{-1}, squarefree
    Complex total{0.0, 0.0};
    auto prim_bar = prim.conjugate();
    for (int64_t R : divisors(ratio)) {
        int mu = mobius(R);
        if (mu == 0) continue;
        // argument m * f * R / N rational; the indicator I_Z keeps integers only
        int64_t num = m * f * R;
        if (num % N != 0) continue;
        int64_t arg = num / N;
        Complex chiR = prim.value(R);
        if (chiR == Complex{0.0, 0.0}) continue;
        Complex v = prim_bar.value(arg);
        if (v == Complex{0.0, 0.0}) continue;
        if (std::gcd(((arg % R) + R) % R, R) != 1 && R > 1) continue;  // 1_R
        double coef = static_cast<double>(mu) * static_cast<double>(euler_phi(N)) /
                      static_cast<double>(euler_phi(f * R));
        total += coef * chiR * v;
    }
    return tau * total;
}

}  // namespace rankinlab::numthy
