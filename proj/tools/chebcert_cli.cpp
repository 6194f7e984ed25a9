#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "chebcert/certificate.hpp"
#include "chebcert/jackson.hpp"
#include "chebcert/poly_io.hpp"
#include "chebcert/sos.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerify = 3;

struct Cell {
    int r, d;
    std::string text;  // "", formatted value, "—", or "ERR"
    double value = 0.0;
    bool error = false;
};

std::string format4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

int run_theta_table(int n, int dmax, int rmax, const std::string& out_path,
                    const std::string& format, int jobs, double time_budget,
                    bool allow_large_n) {
    if (n > 3 && !allow_large_n) {
        std::cerr << "theta-table: n > 3 requires --allow-large-n\n";
        return kExitInput;
    }
    if (n > 3)
        std::cerr << "warning: n = " << n
                  << " enumerates " << (1 << (2 * n)) << " generator subsets; expect long runtimes\n";

    std::vector<Cell> cells;
    for (int r = 1; r <= rmax; ++r)
        for (int d = 1; d <= std::min(r, dmax); ++d) cells.push_back({r, d, "", 0.0, false});

    jobs = std::max(1, jobs);
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            Cell& c = cells[i];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto res = chebcert::theta_upper_bound(n, c.d, c.r);
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
                if (secs > time_budget) {
                    c.text = "—";
                } else if (res.report.status != chebcert::SolveStatus::Optimal) {
                    c.text = "ERR";
                    c.error = true;
                } else {
                    c.value = res.bound;
                    c.text = format4(res.bound);
                }
            } catch (const std::exception&) {
                c.text = "ERR";
                c.error = true;
            }
        }
    };
    for (int j = 0; j < jobs; ++j) workers.emplace_back(work);
    for (auto& w : workers) w.join();

    std::ostringstream out;
    bool any_error = false;
    if (format == "json") {
        nlohmann::json jt;
        jt["n"] = n;
        jt["cells"] = nlohmann::json::array();
        for (const auto& c : cells) {
            nlohmann::json jc{{"r", c.r}, {"d", c.d}};
            if (c.text == "ERR" || c.text == "—")
                jc["value"] = c.text;
            else
                jc["value"] = c.value;
            jt["cells"].push_back(std::move(jc));
            any_error |= c.error;
        }
        out << jt.dump(2) << "\n";
    } else {
        out << "r";
        for (int d = 1; d <= dmax; ++d) out << ",d=" << d;
        out << "\n";
        std::size_t i = 0;
        for (int r = 1; r <= rmax; ++r) {
            out << r;
            for (int d = 1; d <= dmax; ++d) {
                out << ",";
                if (d <= r && i < cells.size() && cells[i].r == r && cells[i].d == d) {
                    out << cells[i].text;
                    any_error |= cells[i].error;
                    ++i;
                }
            }
            out << "\n";
        }
    }

    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "theta-table: cannot open " << out_path << "\n";
            return kExitInput;
        }
        f << out.str();
    }
    return any_error ? kExitSolver : kExitOk;
}

int run_lower_bound(const std::string& poly_file, int r, const std::string& scheme) {
    chebcert::Poly f;
    try {
        f = chebcert::read_poly_file(poly_file);
    } catch (const std::exception& e) {
        std::cerr << "lower-bound: " << e.what() << "\n";
        return kExitInput;
    }
    const auto kind = scheme == "squares" ? chebcert::SchemeKind::Squares
                                          : chebcert::SchemeKind::PlusMinus;
    if (f.degree() > r) {
        std::cerr << "lower-bound: polynomial degree " << f.degree() << " exceeds r = " << r
                  << "\n";
        return kExitInput;
    }
    try {
        const auto res = chebcert::lower_bound(f, r, kind);
        std::printf("%.6f\n", res.value);
        std::printf("status: %s (gap %.2e)\n", chebcert::to_string(res.report.status),
                    res.report.relative_gap);
        const double norm = f.coeff_one_norm(chebcert::Basis::Chebyshev);
        const int d = f.degree();
        if (auto b = chebcert::apriori_gap_bound(d, r / std::max<std::size_t>(1, f.nvars()), norm))
            std::printf("a-priori smoothing gap bound: %.6f\n", *b);
        else
            std::printf("a-priori smoothing gap bound: vacuous at this degree\n");
        return res.report.status == chebcert::SolveStatus::Optimal ? kExitOk : kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "lower-bound: " << e.what() << "\n";
        return kExitSolver;
    }
}

int run_certify_norm(const std::string& poly_file, const std::string& out_path) {
    chebcert::Poly p;
    try {
        p = chebcert::read_poly_file(poly_file);
    } catch (const std::exception& e) {
        std::cerr << "certify-norm: " << e.what() << "\n";
        return kExitInput;
    }
    const auto cert = chebcert::norm_gap_certificate(p);
    const double residual = cert.verify();
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "certify-norm: cannot open " << out_path << "\n";
            return kExitInput;
        }
        f << cert.to_json().dump(2) << "\n";
    } else {
        std::cout << cert.to_json().dump(2) << "\n";
    }
    std::fprintf(stderr, "residual: %.3e\n", residual);
    return residual < 1e-9 ? kExitOk : kExitVerify;
}

int run_verify_certificate(const std::string& cert_file) {
    nlohmann::json j;
    try {
        std::ifstream f(cert_file);
        if (!f) throw std::runtime_error("cannot open " + cert_file);
        f >> j;
    } catch (const std::exception& e) {
        std::cerr << "verify-certificate: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        const auto cert = chebcert::Certificate::from_json(j);
        const double residual = cert.verify();
        std::printf("residual: %.3e\n", residual);
        std::printf("degree cap %d, max term degree %d\n", cert.degree_cap(),
                    cert.max_term_degree());
        return residual < 1e-9 ? kExitOk : kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "verify-certificate: " << e.what() << "\n";
        return kExitInput;
    }
}

int run_jackson_smooth(const std::string& poly_file, int r, const std::string& out_path) {
    chebcert::Poly f;
    try {
        f = chebcert::read_poly_file(poly_file);
    } catch (const std::exception& e) {
        std::cerr << "jackson-smooth: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        const auto kernel = chebcert::product_kernel(f.nvars(), r);
        const auto smoothed =
            chebcert::smooth(f.to_basis(chebcert::Basis::Chebyshev), kernel);
        const auto j = chebcert::poly_to_json(smoothed);
        if (!out_path.empty()) {
            std::ofstream fo(out_path);
            if (!fo) {
                std::cerr << "jackson-smooth: cannot open " << out_path << "\n";
                return kExitInput;
            }
            fo << j.dump(2) << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "jackson-smooth: " << e.what() << "\n";
        return kExitInput;
    }
}

int run_rho(const std::string& poly_file, int d) {
    chebcert::Poly f;
    try {
        f = chebcert::read_poly_file(poly_file);
    } catch (const std::exception& e) {
        std::cerr << "rho: " << e.what() << "\n";
        return kExitInput;
    }
    if (f.degree() > 2 * d) {
        std::cerr << "rho: polynomial degree " << f.degree() << " exceeds 2d = " << 2 * d
                  << "\n";
        return kExitInput;
    }
    try {
        const auto res = chebcert::rho(f, d);
        std::printf("rho_%d = %.8e\n", d, res.rho);
        for (std::size_t i = 0; i < res.lambda.size(); ++i)
            std::printf("lambda_%zu = %.8e\n", i, res.lambda[i]);
        return res.report.status == chebcert::SolveStatus::Optimal ? kExitOk : kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "rho: " << e.what() << "\n";
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev pre-ordering certificates and SOS bounds on [-1,1]^n"};
    app.require_subcommand(1);

    int n = 1, d = 1, r = 1, jobs = 1;
    double time_budget = 120.0;
    bool allow_large_n = false;
    std::string scheme = "plusminus", out_path, format = "csv", poly_file, cert_file;

    auto* theta = app.add_subcommand("theta-table", "Kernel-bound table over (r, d)");
    theta->add_option("--n", n, "number of variables")->required();
    theta->add_option("--d", d, "max column degree d");
    theta->add_option("--r", r, "max row degree r");
    theta->add_option("--out", out_path, "output file (default stdout)");
    theta->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    theta->add_option("--jobs", jobs, "parallel cells");
    theta->add_option("--time-budget", time_budget, "seconds per cell");
    theta->add_flag("--allow-large-n", allow_large_n);

    auto* lb = app.add_subcommand("lower-bound", "Pre-ordering lower bound");
    lb->add_option("poly", poly_file, "polynomial file")->required();
    lb->add_option("--r", r, "truncation degree")->required();
    lb->add_option("--scheme", scheme)->check(CLI::IsMember({"plusminus", "squares"}));

    auto* cn = app.add_subcommand("certify-norm", "Certificate for ||p|| - p");
    cn->add_option("poly", poly_file, "polynomial file")->required();
    cn->add_option("--out", out_path, "certificate output file");

    auto* vc = app.add_subcommand("verify-certificate", "Re-verify a certificate file");
    vc->add_option("cert", cert_file, "certificate JSON file")->required();

    auto* js = app.add_subcommand("jackson-smooth", "Coefficientwise kernel smoothing");
    js->add_option("poly", poly_file, "polynomial file")->required();
    js->add_option("--r", r, "kernel degree per variable")->required();
    js->add_option("--out", out_path, "output file (default stdout)");

    auto* rh = app.add_subcommand("rho", "1-norm distance to the SOS cone");
    rh->add_option("poly", poly_file, "polynomial file")->required();
    rh->add_option("--d", d, "half degree")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (theta->parsed())
        return run_theta_table(n, d, r, out_path, format, jobs, time_budget, allow_large_n);
    if (lb->parsed()) return run_lower_bound(poly_file, r, scheme);
    if (cn->parsed()) return run_certify_norm(poly_file, out_path);
    if (vc->parsed()) return run_verify_certificate(cert_file);
    if (js->parsed()) return run_jackson_smooth(poly_file, r, out_path);
    if (rh->parsed()) return run_rho(poly_file, d);
    return kExitInput;
}
