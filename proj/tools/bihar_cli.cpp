// Command-line front end: certification of the singular extremal solution
// per dimension, summary tables, branch continuation runs, and the
// Hardy-Rellich structure checks.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <chrono>
#include <ctime>

#include <CLI11.hpp>

#include <bihar/report.hpp>

namespace fs = std::filesystem;
using namespace bihar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitConfig = 3;

struct Config {
    std::vector<int> dims;
    std::string m_str;
    double tol = 1e-6;
    int max_depth = 60;
    std::string format = "text";
    int parallelism = 1;
    double lambda_prime = 0.0; // 0 = no override
    double beta = 0.0;
    std::string out_dir = "reports";
    bool overwrite = false;
};

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    auto range = s.find("..");
    if (range != std::string::npos) {
        int a = std::stoi(s.substr(0, range));
        int b = std::stoi(s.substr(range + 2));
        for (int n = a; n <= b; ++n) dims.push_back(n);
        return dims;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        dims.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return dims;
}

CertifyControl make_control(const Config& cfg) {
    CertifyControl ctl;
    ctl.bound.rel_tol = cfg.tol;
    ctl.bound.max_depth = cfg.max_depth;
    ctl.sign_max_depth = cfg.max_depth;
    return ctl;
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

bool write_report(const Config& cfg, const std::string& name, const json& body) {
    fs::create_directories(cfg.out_dir);
    fs::path path = fs::path(cfg.out_dir) / name;
    if (fs::exists(path) && !cfg.overwrite) {
        std::cerr << "refusing to overwrite " << path << " (use --overwrite)\n";
        return false;
    }
    json wrapped = body;
    wrapped["meta"] = json{{"generated_at", iso_now()}};
    std::ofstream out(path);
    out << wrapped.dump(2) << '\n';
    return true;
}

// runs f over the dimensions on a small worker pool, results ordered by N
template <class T, class F>
std::vector<T> run_over_dims(const std::vector<int>& dims, int parallelism, F&& f) {
    std::vector<T> results(dims.size());
    if (parallelism <= 1) {
        for (std::size_t i = 0; i < dims.size(); ++i) results[i] = f(dims[i]);
        return results;
    }
    std::vector<std::future<T>> futures(dims.size());
    std::size_t next = 0;
    while (next < dims.size()) {
        std::size_t batch = std::min<std::size_t>(parallelism, dims.size() - next);
        for (std::size_t i = 0; i < batch; ++i)
            futures[next + i] = std::async(std::launch::async, f, dims[next + i]);
        for (std::size_t i = 0; i < batch; ++i) results[next + i] = futures[next + i].get();
        next += batch;
    }
    return results;
}

int cmd_certify(const Config& cfg) {
    for (int n : cfg.dims)
        if (n < 13) {
            std::cerr << "certify: N >= 13 required (got " << n << ")\n";
            return kExitConfig;
        }
    CertifyControl ctl = make_control(cfg);

    // overrides turn the run into direct cond1/cond2 certification
    if (cfg.lambda_prime > 0.0 || cfg.beta > 0.0) {
        int exit_code = kExitOk;
        for (int n : cfg.dims) {
            Dimension dim(n);
            Rational m = cfg.m_str.empty() ? default_m(n) : parse_rational(cfg.m_str);
            std::vector<Certificate> certs;
            if (cfg.lambda_prime > 0.0)
                certs.push_back(check_cond1(dim, m, cfg.lambda_prime, ctl));
            if (cfg.beta > 0.0) certs.push_back(check_cond2(dim, m, cfg.beta, ctl));
            for (const auto& c : certs) {
                std::cout << "N=" << n << "  " << to_cstring(c.status) << "  " << c.claim;
                if (c.witness) std::cout << "  witness r=" << *c.witness;
                std::cout << '\n';
                if (c.status == CertStatus::Falsified)
                    exit_code = std::max(exit_code, kExitFalsified);
                else if (c.status == CertStatus::Inconclusive)
                    exit_code = std::max(exit_code, kExitInconclusive);
            }
        }
        return exit_code;
    }

    auto reports = run_over_dims<DimensionReport>(
        cfg.dims, cfg.parallelism, [&](int n) { return certify_dimension(n, ctl); });

    int exit_code = kExitOk;
    json summary = json::array();
    for (const auto& rep : reports) {
        bool ok = rep.verdict == Verdict::SingularCertified;
        std::cout << "N=" << rep.N << "  m=" << to_string(rep.m) << "  S=["
                  << rep.S.value.lo() << ", " << rep.S.value.hi() << "]  I=["
                  << rep.I.value.lo() << ", " << rep.I.value.hi() << "]  "
                  << (ok ? "SingularCertified" : "Failed") << '\n';
        if (!ok) {
            bool inconclusive =
                !rep.S.converged || !rep.I.converged ||
                std::any_of(rep.certificates.begin(), rep.certificates.end(),
                            [](const Certificate& c) {
                                return c.status == CertStatus::Inconclusive;
                            });
            exit_code = std::max(exit_code,
                                 inconclusive ? kExitInconclusive : kExitFalsified);
        }
        if (!write_report(cfg, "certify_N" + std::to_string(rep.N) + ".json",
                          to_json(rep)))
            return kExitConfig;
        summary.push_back(to_json(rep));
    }
    if (!write_report(cfg, "certify_summary.json", json{{"dimensions", summary}}))
        return kExitConfig;
    return exit_code;
}

int cmd_table(const Config& cfg) {
    for (int n : cfg.dims)
        if (n < 13) {
            std::cerr << "table: N >= 13 required (got " << n << ")\n";
            return kExitConfig;
        }
    CertifyControl ctl = make_control(cfg);
    auto reports = run_over_dims<DimensionReport>(
        cfg.dims, cfg.parallelism, [&](int n) { return certify_dimension(n, ctl); });

    if (cfg.format == "csv")
        std::cout << "N,table_lambda,table_beta,S_lo,S_hi,I_lo,I_hi,margin\n";
    else
        std::cout << "  N  table l'  table b        S_N.hi        I_N.lo        margin\n";
    int exit_code = kExitOk;
    for (const auto& rep : reports) {
        double margin = rep.I.value.lo() - rep.S.value.hi();
        double tl = rep.table_lambda.value_or(
            8.0 * (rep.N - 2) * (rep.N - 4) * e_squared().hi());
        double tb = rep.table_beta.value_or(to_double(Dimension(rep.N).H()));
        if (cfg.format == "csv") {
            std::printf("%d,%g,%g,%.10g,%.10g,%.10g,%.10g,%.10g\n", rep.N, tl, tb,
                        rep.S.value.lo(), rep.S.value.hi(), rep.I.value.lo(),
                        rep.I.value.hi(), margin);
        } else {
            std::printf("%3d  %8g  %7g  %12.4f  %12.4f  %12.4f\n", rep.N, tl, tb,
                        rep.S.value.hi(), rep.I.value.lo(), margin);
        }
        if (rep.verdict != Verdict::SingularCertified) exit_code = kExitFalsified;
    }
    return exit_code;
}

int cmd_branch(const Config& cfg) {
    CertifyControl ctl = make_control(cfg);
    int exit_code = kExitOk;
    for (int n : cfg.dims) {
        if (n < 13) {
            std::cerr << "branch: N >= 13 required (got " << n << ")\n";
            return kExitConfig;
        }
        branch::ContinuationControl bctl;
        branch::ContinuationResult res = branch::continue_branch(n, bctl);
        if (res.stalled) {
            std::cerr << "N=" << n << ": continuation stalled\n";
            exit_code = std::max(exit_code, kExitInconclusive);
        }
        BoundEnclosure S = lambda_prime_enclosure(Dimension(n), default_m(n), ctl);
        bool respects = res.lambda_star <= S.value.lo();
        std::cout << "N=" << n << "  lambda_star=" << res.lambda_star
                  << "  fold u0=" << res.fold.u0 << "  certified bound S_N.lo="
                  << S.value.lo() << (respects ? "  ok" : "  VIOLATION") << '\n';
        if (!respects) exit_code = std::max(exit_code, kExitFalsified);
        fs::create_directories(cfg.out_dir);
        fs::path csv = fs::path(cfg.out_dir) / ("branch_N" + std::to_string(n) + ".csv");
        if (fs::exists(csv) && !cfg.overwrite) {
            std::cerr << "refusing to overwrite " << csv << " (use --overwrite)\n";
            return kExitConfig;
        }
        std::ofstream(csv) << branch_csv(res);
        json j = to_json(res);
        j["certified_upper_bound"] = to_json(S.value);
        if (!write_report(cfg, "branch_N" + std::to_string(n) + ".json", j))
            return kExitConfig;
    }
    return exit_code;
}

int cmd_hr_check(const Config& cfg) {
    for (int n : cfg.dims)
        if (n < 5) {
            std::cerr << "hr-check: N >= 5 required (got " << n << ")\n";
            return kExitConfig;
        }
    CertifyControl ctl = make_control(cfg);
    int exit_code = kExitOk;
    for (int n : cfg.dims) {
        Dimension dim(n);
        std::vector<Certificate> certs;
        certs.push_back(check_bessel_supersolution(dim, ctl));
        certs.push_back(check_vr_over_v(dim, ctl));
        {
            // hr1 dominates hr2: cleared difference (9/10) A r^{N/2-1} >= 0
            LogPolynomial diff = Rational(9, 10) * LogPolynomial::power(
                weights::hr1_first_constant(dim), Rational(n - 2, 2));
            auto f = [&](const Interval& r) { return diff.eval(r); };
            certs.push_back(certify_sign(f, Interval(1e-6, 1.0 - 1e-6),
                                         SignClaim::NonNegative,
                                         "hr1_weight >= hr2_weight on (0,1), N=" +
                                             std::to_string(n),
                                         ctl));
        }
        for (const auto& c : certs) {
            std::cout << "N=" << n << "  " << to_cstring(c.status) << "  " << c.claim
                      << '\n';
            if (c.status == CertStatus::Falsified)
                exit_code = std::max(exit_code, kExitFalsified);
            else if (c.status == CertStatus::Inconclusive)
                exit_code = std::max(exit_code, kExitInconclusive);
        }
    }
    Rational m = cfg.m_str.empty() ? Rational(7, 2) : parse_rational(cfg.m_str);
    int threshold = classical_hr_threshold(m, ctl);
    std::cout << "classical Hardy-Rellich threshold for m=" << to_string(m) << ": N >= "
              << threshold << '\n';
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified bounds for the biharmonic exponential eigenvalue problem"};
    app.require_subcommand(1);

    Config cfg;
    std::string dims_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dims", dims_str, "dimensions: range '13..31' or list '13,20'")
            ->required();
        sub->add_option("--m", cfg.m_str, "test-function exponent m (rational, e.g. 7/2)");
        sub->add_option("--tol", cfg.tol, "relative tolerance for enclosures");
        sub->add_option("--max-depth", cfg.max_depth, "bisection depth limit");
        sub->add_option("--format", cfg.format, "output format: text|csv|json");
        sub->add_option("--parallelism", cfg.parallelism, "worker count for dimension jobs");
        sub->add_option("--out", cfg.out_dir, "report output directory");
        sub->add_flag("--overwrite", cfg.overwrite, "allow overwriting existing reports");
    };

    CLI::App* certify = app.add_subcommand("certify", "certify singularity per dimension");
    add_common(certify);
    certify->add_option("--lambda-prime", cfg.lambda_prime,
                        "override: certify cond1 at this lambda'");
    certify->add_option("--beta", cfg.beta, "override: certify cond2 at this beta");

    CLI::App* table = app.add_subcommand("table", "summary table with certified enclosures");
    add_common(table);

    CLI::App* branch_cmd = app.add_subcommand("branch", "minimal-branch continuation");
    add_common(branch_cmd);

    CLI::App* hr = app.add_subcommand("hr-check", "Hardy-Rellich structure certificates");
    add_common(hr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        cfg.dims = parse_dims(dims_str);
        if (cfg.dims.empty()) {
            std::cerr << "no dimensions given\n";
            return kExitConfig;
        }
        if (certify->parsed()) return cmd_certify(cfg);
        if (table->parsed()) return cmd_table(cfg);
        if (branch_cmd->parsed()) return cmd_branch(cfg);
        if (hr->parsed()) return cmd_hr_check(cfg);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconclusive;
    }
    return kExitConfig;
}
