// rankin-lab: command-line front end exposing the library as reproducible
// experiments with machine-readable output.
//
// Output schema: {command, inputs, outputs, checks:[{name,value,target,tol,pass}]}
// (stable field order, UTF-8, newline-terminated).  CSV uses '.' decimals.
// Exit codes: 0 success, 2 validation failure, 3 tolerance failure in --check mode.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "rankinlab/eisen.hpp"
#include "rankinlab/forms.hpp"
#include "rankinlab/numthy.hpp"
#include "rankinlab/rankin.hpp"

using json = nlohmann::ordered_json;
using namespace rankinlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    std::string name;
    double value;
    double target;
    double tol;
    bool pass;
};

struct Output {
    json doc;
    std::vector<Check> checks;
    bool deterministic = false;

    explicit Output(const std::string& command) {
        doc["command"] = command;
        doc["inputs"] = json::object();
        doc["outputs"] = json::object();
    }
    void add_check(const std::string& name, double value, double target, double tol) {
        checks.push_back({name, value, target, tol, std::abs(value - target) <= tol});
    }
    void add_check_abs(const std::string& name, double diff, double tol) {
        checks.push_back({name, diff, 0.0, tol, std::abs(diff) <= tol});
    }
    int emit(const std::string& out_path, bool check_mode) {
        json arr = json::array();
        bool all = true;
        for (const auto& c : checks) {
            arr.push_back(json{{"name", c.name},
                               {"value", c.value},
                               {"target", c.target},
                               {"tol", c.tol},
                               {"pass", c.pass}});
            all = all && c.pass;
        }
        doc["checks"] = arr;
        std::string text = doc.dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << text;
        }
        std::cout << text;
        return (check_mode && !all) ? 3 : 0;
    }
};

numthy::DirichletCharacter parse_char_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("character spec must look like kron:-4 or principal:12");
    std::string kind = spec.substr(0, colon);
    long long arg = std::stoll(spec.substr(colon + 1));
    if (kind == "kron") {
        if (arg == 0) throw CLI::ValidationError("kron: argument must be nonzero");
        return numthy::kronecker_chi(arg);
    }
    if (kind == "principal") {
        if (arg < 1) throw CLI::ValidationError("principal: modulus must be positive");
        return numthy::DirichletCharacter::principal(arg);
    }
    throw CLI::ValidationError("unknown character spec kind: " + kind);
}

int parse_theta_name(const std::string& name) {
    if (name.rfind("theta", 0) != 0)
        throw CLI::ValidationError("form name must look like thetaK (got " + name + ")");
    int k = std::stoi(name.substr(5));
    if (k < 1 || k > 16) throw CLI::ValidationError("theta power out of range [1,16]");
    return k;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path);
    f.imbue(std::locale::classic());
    for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << "\n";
    f << std::setprecision(15);
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << "\n";
    }
}

// ---- subcommand bodies ----------------------------------------------------

int run_chars(int64_t N, const std::string& out, bool check_mode, bool) {
    Output o("chars");
    o.doc["inputs"]["modulus"] = N;
    auto group = numthy::char_group(N);
    json arr = json::array();
    for (size_t i = 0; i < group.size(); ++i) {
        const auto& c = group[i];
        arr.push_back(json{{"index", i},
                           {"order", c.order()},
                           {"conductor", c.conductor()},
                           {"parity", c.parity()},
                           {"real", c.is_real()},
                           {"e_chi", numthy::e_chi(c)},
                           {"e_chi_prime", numthy::e_chi_prime(c)}});
    }
    o.doc["outputs"]["count"] = group.size();
    o.doc["outputs"]["characters"] = arr;
    o.add_check("group size = phi(N)", static_cast<double>(group.size()),
                static_cast<double>(numthy::euler_phi(N)), 0.0);
    return o.emit(out, check_mode);
}

int run_cusps(int64_t N, const std::string& out, bool check_mode, bool) {
    Output o("cusps");
    o.doc["inputs"]["level"] = N;
    auto sys = forms::cusp_system(N);
    json arr = json::array();
    for (size_t j = 0; j < sys.cusps.size(); ++j)
        arr.push_back(json{{"cusp", std::to_string(sys.cusps[j].i) + "/" + std::to_string(sys.cusps[j].M)},
                           {"width", sys.widths[j]}});
    o.doc["outputs"]["cusps"] = arr;
    int64_t wsum = 0, index = N;
    for (auto w : sys.widths) wsum += w;
    for (const auto& [p, e] : numthy::factor(N)) {
        (void)e;
        index = index / p * (p + 1);
    }
    o.doc["outputs"]["width_sum"] = wsum;
    o.add_check("width sum = index", static_cast<double>(wsum), static_cast<double>(index), 0.0);
    return o.emit(out, check_mode);
}

int run_theta_coeffs(int k, int64_t nmax, const std::string& csv, const std::string& out,
                     bool check_mode, bool) {
    Output o("theta-coeffs");
    o.doc["inputs"]["k"] = k;
    o.doc["inputs"]["nmax"] = nmax;
    auto tab = forms::theta_power_table(k, nmax);
    if (!csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (int64_t n = 0; n <= nmax; ++n)
            rows.push_back({static_cast<double>(n), static_cast<double>(tab[n])});
        write_csv(csv, {"n", "r_k"}, rows);
        o.doc["outputs"]["csv"] = csv;
    }
    json head = json::array();
    for (int64_t n = 0; n <= std::min<int64_t>(nmax, 16); ++n) head.push_back(tab[n]);
    o.doc["outputs"]["first_coefficients"] = head;
    return o.emit(out, check_mode);
}

int run_eis_coeffs(int k, int64_t nmax, const std::string& out, bool check_mode, bool) {
    Output o("eis-coeffs");
    o.doc["inputs"]["k"] = k;
    o.doc["inputs"]["nmax"] = nmax;
    json eis = json::array(), script = json::array();
    for (int64_t n = 1; n <= nmax; ++n) {
        eis.push_back(eisen::eis_half_coeff_N4_s0(k, n).rational().str());
        script.push_back(eisen::scriptE_coeff(k, n).rational().str());
    }
    o.doc["outputs"]["eisenstein_coefficients"] = eis;
    o.doc["outputs"]["holomorphic_coefficients"] = script;
    return o.emit(out, check_mode);
}

int run_verify_theta(int k, int64_t nmax, const std::string& out, bool check_mode, bool) {
    Output o("verify-theta-identity");
    o.doc["inputs"]["k"] = k;
    o.doc["inputs"]["nmax"] = nmax;
    auto r = forms::theta_power_table(2 * k + 1, nmax);
    ExactRational max_diff = 0;
    for (int64_t n = 0; n <= nmax; ++n) {
        ExactRational d = eisen::scriptE_coeff(k, n).rational() - ExactRational(r[n]);
        if (d < 0) d = -d;
        if (d > max_diff) max_diff = d;
    }
    o.doc["outputs"]["max_abs_diff"] = static_cast<double>(max_diff);
    o.add_check("theta identity exact", static_cast<double>(max_diff), 0.0, 0.0);
    return o.emit(out, check_mode);
}

int run_lfun_partial(const std::string& pair, double sre, double sim, int64_t xmax,
                     const std::string& out, bool check_mode, bool) {
    Output o("lfun-partial");
    auto colon = pair.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--pair must look like theta1:theta1");
    int ka = parse_theta_name(pair.substr(0, colon));
    int kb = parse_theta_name(pair.substr(colon + 1));
    o.doc["inputs"]["pair"] = pair;
    o.doc["inputs"]["s"] = {sre, sim};
    o.doc["inputs"]["xmax"] = xmax;
    auto f = forms::theta_series(ka), g = forms::theta_series(kb);
    Complex v = rankin::l_partial(f, g, {sre, sim}, xmax);
    o.doc["outputs"]["partial_sum"] = {v.real(), v.imag()};
    if (ka == 1 && kb == 1) {
        double target = 4.0 * std::real(analytic::zeta_c({2.0 * sre, 2.0 * sim}));
        o.add_check("4 zeta(2s) identity", v.real(), target, 1e-5);
    }
    return o.emit(out, check_mode);
}

int run_residues(const std::string& family, int k, int m, const std::string& out, bool check_mode,
                 bool) {
    Output o("residues");
    o.doc["inputs"]["family"] = family;
    o.doc["inputs"]["k"] = k;
    o.doc["inputs"]["m"] = m;
    double value = 0.0;
    if (family == "wagon") {
        value = rankin::wagon_constant(k);
    } else if (family == "mixed4m") {
        value = rankin::mixed_constant_4m(k, m);
    } else if (family == "mixed2m") {
        value = rankin::mixed_constant_2m_odd(k, m);
    } else if (family == "mixedm") {
        value = rankin::mixed_constant_m_odd(k, m);
    } else if (family == "theta-self") {
        auto f = forms::theta_series(k);
        value = rankin::predicted_residue_ctk(f, f, {k}, 0, 4).real();
    } else {
        throw CLI::ValidationError("unknown residue family: " + family);
    }
    o.doc["outputs"]["constant"] = value;
    if (family == "theta-self" && k >= 3)
        o.add_check("matches the displayed constant", value, rankin::wagon_constant(k),
                    1e-10 * std::abs(value));
    return o.emit(out, check_mode);
}

int run_asymptotic(const std::string& pair, int64_t xmax, const std::string& csv,
                   const std::string& out, bool check_mode, bool) {
    Output o("asymptotic");
    auto colon = pair.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--pair must look like theta4:theta4");
    int ka = parse_theta_name(pair.substr(0, colon));
    int kb = parse_theta_name(pair.substr(colon + 1));
    o.doc["inputs"]["pair"] = pair;
    o.doc["inputs"]["xmax"] = xmax;
    double C;
    double alpha = (ka + kb) / 2.0 - 1.0;
    if (ka == kb) {
        C = rankin::wagon_constant(ka);
    } else {
        int diff = ka - kb;
        if (diff % 4 == 0)
            C = rankin::mixed_constant_4m(ka, diff / 4);
        else if (diff % 2 == 0)
            C = rankin::mixed_constant_2m_odd(ka, diff / 2);
        else
            C = rankin::mixed_constant_m_odd(ka, diff);
    }
    auto a = forms::theta_power_table_real(ka, xmax);
    auto b = forms::theta_power_table_real(kb, xmax);
    auto rep = rankin::asymptotic_report(a, b, alpha, C, rankin::geometric_grid(xmax));
    o.doc["inputs"]["constant"] = C;
    o.doc["inputs"]["exponent"] = alpha;
    if (!csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < rep.grid.size(); ++i)
            rows.push_back({rep.grid[i], rep.sums[i], rep.predicted[i], rep.ratios[i]});
        write_csv(csv, {"X", "sum", "predicted", "ratio"}, rows);
        o.doc["outputs"]["csv"] = csv;
    }
    o.doc["outputs"]["final_ratio"] = rep.final_ratio;
    o.doc["outputs"]["fitted_exponent"] = rep.fitted_exponent;
    o.add_check("final ratio near 1", rep.final_ratio, 1.0, (ka == 3 && kb == 3) ? 0.05 : 0.02);
    o.add_check("fitted exponent", rep.fitted_exponent, alpha, 0.05);
    return o.emit(out, check_mode);
}

int run_petersson(const std::string& form, const std::string& method, double T,
                  const std::string& out, bool check_mode, bool) {
    Output o("petersson");
    int k = parse_theta_name(form);
    if (k % 2 == 0) throw CLI::ValidationError("petersson: odd theta powers only");
    o.doc["inputs"]["form"] = form;
    o.doc["inputs"]["method"] = method;
    rankin::PeterssonResult r;
    if (method == "vl-sp") {
        r = rankin::theta_power_petersson((k - 1) / 2);
    } else if (method == "numeric") {
        auto f = forms::theta_series(k);
        o.doc["inputs"]["T"] = T;
        r = rankin::psp_numeric(f, f, {k}, T, 1e-4);
    } else if (method == "residue") {
        if (k != 1)
            throw CLI::ValidationError("petersson --method residue: theta1 only (residue 2 known)");
        r = rankin::psp_via_residue({1}, 4, {2.0, 0.0});
    } else {
        throw CLI::ValidationError("unknown method: " + method);
    }
    o.doc["outputs"]["value"] = {r.value.real(), r.value.imag()};
    o.doc["outputs"]["method"] = r.method;
    o.doc["outputs"]["error_estimate"] = r.error_estimate;
    if (k == 1) o.add_check("2 pi", r.value.real(), 2.0 * kPi, 0.01 * 2.0 * kPi);
    if (k == 3) o.add_check("-12 log2 / pi", r.value.real(), -12.0 * std::log(2.0) / kPi, 0.03);
    return o.emit(out, check_mode);
}

int run_report_all(const std::string& out, bool check_mode, bool deterministic) {
    Output o("report-all");
    o.doc["inputs"] = json::object();

    {  // theta identity, k = 1..3
        for (int k = 1; k <= 3; ++k) {
            auto r = forms::theta_power_table(2 * k + 1, 300);
            bool exact = true;
            for (int64_t n = 0; n <= 300; ++n)
                exact = exact && eisen::scriptE_coeff(k, n).rational() == ExactRational(r[n]);
            o.add_check("theta identity k=" + std::to_string(k), exact ? 0.0 : 1.0, 0.0, 0.0);
        }
    }
    {  // Wagon ratios
        auto grid = rankin::geometric_grid(20000.0);
        for (int k = 3; k <= 8; ++k) {
            auto tab = forms::theta_power_table_real(k, 20000);
            auto rep = rankin::asymptotic_report(tab, tab, k - 1.0, rankin::wagon_constant(k), grid);
            o.add_check("wagon k=" + std::to_string(k), rep.final_ratio, 1.0, k == 3 ? 0.05 : 0.02);
        }
    }
    {  // gauss sums
        double worst = 0;
        for (int64_t N = 1; N <= 40; ++N)
            for (auto& chi : numthy::char_group(N))
                for (int64_t m = 0; m < N; ++m)
                    worst = std::max(worst,
                                     std::abs(numthy::gauss_sum_formula(chi, m) -
                                              numthy::gauss_sum_direct(chi, m)));
        o.add_check_abs("gauss sum formula vs direct (N<=40)", worst, 1e-12);
    }
    {  // petersson anchors
        auto th = forms::theta_series(1);
        auto num = rankin::psp_numeric(th, th, {1}, 8.0, 1e-4);
        o.add_check("psp_numeric(theta)", num.value.real(), 2.0 * kPi, 0.01 * 2.0 * kPi);
        o.add_check("psp_vl_sp(theta^3)", rankin::theta_power_petersson(1).value.real(),
                    -12.0 * std::log(2.0) / kPi, 1e-6);
    }
    return o.emit(out, check_mode && !deterministic ? check_mode : check_mode);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankin-lab: explicit modular-form L-function experiments"};
    app.require_subcommand(1);

    std::string out_path;
    bool check_mode = false, deterministic = false;
    app.add_option("--out", out_path, "write the JSON report to this path as well as stdout");
    app.add_flag("--check", check_mode, "exit 3 if any check fails");
    app.add_flag("--deterministic", deterministic, "fixed summation order, byte-identical output");

    int64_t N = 4, nmax = 100, xmax = 20000;
    int k = 1, m = 1;
    double T = 8.0, sre = 2.0, sim = 0.0;
    std::string pair = "theta1:theta1", family = "wagon", form = "theta1", method = "vl-sp",
                csv_path, char_spec;

    auto* chars = app.add_subcommand("chars", "list the character group mod N");
    chars->add_option("--modulus", N, "modulus")->required();
    chars->add_option("--spec", char_spec, "validate a character spec (kron:D | principal:N)");

    auto* cusps = app.add_subcommand("cusps", "cusp representatives and widths of Gamma_0(N)");
    cusps->add_option("--level", N, "level")->required();

    auto* tc = app.add_subcommand("theta-coeffs", "representation numbers r_k(n)");
    tc->add_option("--k", k)->required();
    tc->add_option("--nmax", nmax);
    tc->add_option("--csv", csv_path);

    auto* ec = app.add_subcommand("eis-coeffs", "half-integral Eisenstein coefficients at level 4");
    ec->add_option("--k", k)->required()->check(CLI::Range(1, 8));
    ec->add_option("--nmax", nmax);

    auto* vt = app.add_subcommand("verify-theta-identity", "theta^{2k+1} against the coefficient engine");
    vt->add_option("--k", k)->required()->check(CLI::Range(1, 3));
    vt->add_option("--nmax", nmax);

    auto* lf = app.add_subcommand("lfun-partial", "partial sums of L(s; f, g)");
    lf->add_option("--pair", pair);
    lf->add_option("--s", sre);
    lf->add_option("--sim", sim);
    lf->add_option("--xmax", xmax);

    auto* rs = app.add_subcommand("residues", "closed-form residues / asymptotic constants");
    rs->add_option("--family", family, "wagon | mixed4m | mixed2m | mixedm | theta-self");
    rs->add_option("--k", k)->required();
    rs->add_option("--m", m);

    auto* as = app.add_subcommand("asymptotic", "partial sums against the predicted main term");
    as->add_option("--pair", pair)->required();
    as->add_option("--xmax", xmax);
    as->add_option("--csv", csv_path);

    auto* pt = app.add_subcommand("petersson", "Petersson scalar products of theta powers");
    pt->add_option("--form", form)->required();
    pt->add_option("--method", method, "vl-sp | numeric | residue");
    pt->add_option("--T", T);

    auto* ra = app.add_subcommand("report-all", "run every acceptance family");
    (void)ra;

    CLI11_PARSE(app, argc, argv);

    try {
        if (chars->parsed()) {
            if (!char_spec.empty()) parse_char_spec(char_spec);
            return run_chars(N, out_path, check_mode, deterministic);
        }
        if (cusps->parsed()) return run_cusps(N, out_path, check_mode, deterministic);
        if (tc->parsed()) return run_theta_coeffs(k, nmax, csv_path, out_path, check_mode, deterministic);
        if (ec->parsed()) return run_eis_coeffs(k, nmax, out_path, check_mode, deterministic);
        if (vt->parsed()) return run_verify_theta(k, nmax, out_path, check_mode, deterministic);
        if (lf->parsed())
            return run_lfun_partial(pair, sre, sim, xmax, out_path, check_mode, deterministic);
        if (rs->parsed()) return run_residues(family, k, m, out_path, check_mode, deterministic);
        if (as->parsed()) return run_asymptotic(pair, xmax, csv_path, out_path, check_mode, deterministic);
        if (pt->parsed()) return run_petersson(form, method, T, out_path, check_mode, deterministic);
        if (ra->parsed()) return run_report_all(out_path, check_mode, deterministic);
    } catch (const CLI::ValidationError& err) {
        std::cerr << "validation error: " << err.what() << "\n";
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "precondition violated: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
