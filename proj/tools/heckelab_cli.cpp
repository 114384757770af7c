// Command-line driver: every experiment and verification suite with
// machine-readable CSV/JSON output. Exit codes: 0 all pass, 1 a check
// failed, 2 usage or configuration error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "heckelab/characters.hpp"
#include "heckelab/dirichlet_series.hpp"
#include "heckelab/eigen.hpp"
#include "heckelab/kfull.hpp"
#include "heckelab/numeric.hpp"
#include "heckelab/parallel.hpp"
#include "heckelab/report_io.hpp"
#include "heckelab/sums.hpp"
#include "heckelab/verify.hpp"

namespace hl = heckelab;

namespace {

struct Options {
    std::int64_t n = 0;
    std::vector<std::int64_t> x_grid;
    std::vector<std::int64_t> q_list;
    std::vector<int> k_list;
    std::string kernel = "const_one";
    std::vector<std::int64_t> h_list;
    std::int64_t cutoff_p = 10000;
    std::int64_t cutoff_u = 10000;
    std::int64_t kappa_max = 400;
    std::int64_t d_max = 400;
    std::string format = "csv";
    std::string cache;
    int threads = 0;
    std::string suite;
    std::string which = "U";
    std::int64_t chi_index = 0;
    std::int64_t q_single = 1;
};

std::vector<hl::int128> obtain_tau(const Options& opt, std::int64_t n) {
    if (!opt.cache.empty() && std::filesystem::exists(opt.cache)) {
        auto tau = hl::load_tau_cache(opt.cache);
        if (static_cast<std::int64_t>(tau.size()) - 1 >= n) {
            tau.resize(static_cast<std::size_t>(n) + 1);
            return tau;
        }
    }
    auto tau = hl::compute_tau_series(n, opt.threads);
    if (!opt.cache.empty()) hl::save_tau_cache(opt.cache, tau);
    return tau;
}

int cmd_tau(const Options& opt) {
    std::int64_t n = opt.n > 0 ? opt.n : 1000;
    auto tau = obtain_tau(opt, n);
    std::printf("tau,%lld,%016llx\n", static_cast<long long>(n),
                static_cast<unsigned long long>(hl::tau_checksum(tau)));
    return 0;
}

int cmd_chars(const Options& opt) {
    hl::CharacterGroup group(opt.q_single);
    std::string out = "q,index,order,conductor,primitive\n";
    for (std::size_t i = 0; i < group.size(); ++i) {
        auto chi = group.character(i);
        out += std::to_string(chi.modulus()) + ',' + std::to_string(i) + ',' +
               std::to_string(chi.order()) + ',' + std::to_string(chi.conductor()) + ',' +
               (chi.is_primitive() ? "1" : "0") + '\n';
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_verify(const Options& opt) {
    std::int64_t n = opt.n > 0 ? opt.n : 100000;
    auto lines = hl::run_verify_suite(opt.suite, n, opt.threads);
    bool all = true;
    std::string out;
    for (const auto& line : lines) {
        all = all && line.pass;
        out += line.suite + ',' + line.check + ',' + (line.pass ? "pass" : "FAIL") + ',' +
               hl::format_double(line.max_residual) + '\n';
    }
    std::fputs(out.c_str(), stdout);
    return all ? 0 : 1;
}

int cmd_series_dump(const Options& opt) {
    std::int64_t n = opt.n > 0 ? opt.n : 1000;
    auto eigen = hl::EigenSystem::delta_from_tau(obtain_tau(opt, n));
    hl::FactorTable table(n);
    hl::CharacterGroup group(opt.q_single);
    auto chi = group.character(static_cast<std::size_t>(opt.chi_index));
    const hl::DirichletCharacter* chi_ptr = opt.q_single == 1 ? nullptr : &chi;

    hl::FormalDirichletSeries series;
    if (opt.which == "F") {
        series = hl::build_F(eigen, chi_ptr, n);
    } else if (opt.which == "L") {
        series = chi_ptr ? hl::build_l_series(*chi_ptr, n)
                         : hl::FormalDirichletSeries::ones(n, "zeta");
    } else if (opt.which == "sym2") {
        series = hl::build_sym_series(eigen, 2, chi_ptr, n, table);
    } else if (opt.which == "sym4") {
        series = hl::build_sym_series(eigen, 4, chi_ptr, n, table);
    } else if (opt.which == "U") {
        auto u = hl::extract_U(eigen, chi_ptr, n, table);
        series.n_max = u.n_max;
        series.a = std::move(u.u);
    } else {
        throw CLI::ValidationError("--which must be one of F, L, sym2, sym4, U");
    }
    std::string out = "n,re,im\n";
    for (std::int64_t i = 1; i <= n; ++i) {
        out += std::to_string(i) + ',' + hl::format_double(series.at(i).real()) + ',' +
               hl::format_double(series.at(i).imag()) + '\n';
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_series_verify(const Options& opt) {
    std::int64_t n = opt.n > 0 ? opt.n : 10000;
    auto eigen = hl::EigenSystem::delta_from_tau(obtain_tau(opt, n));
    hl::FactorTable table(n);
    bool all = true;
    std::string out = "chi,q,index,status,max_residual\n";
    auto run_one = [&](const hl::DirichletCharacter* chi, std::int64_t q, std::size_t idx) {
        auto check = hl::check_factorization(eigen, chi, n, table);
        bool ok = check.max_residual < 1e-9 && check.u1_error == 0.0 &&
                  check.max_u_at_primes < 1e-10 && check.max_u_off_support < 1e-9;
        all = all && ok;
        out += std::string("chi,") + std::to_string(q) + ',' + std::to_string(idx) + ',' +
               (ok ? "pass" : "FAIL") + ',' + hl::format_double(check.max_residual) + '\n';
    };
    run_one(nullptr, 1, 0);
    for (std::int64_t q : opt.q_list) {
        if (q == 1) continue;
        hl::CharacterGroup group(q);
        for (std::size_t i = 0; i < group.size(); ++i) {
            auto chi = group.character(i);
            run_one(&chi, q, i);
        }
    }
    std::fputs(out.c_str(), stdout);
    return all ? 0 : 1;
}

int cmd_kfull_list(const Options& opt) {
    std::int64_t x = opt.x_grid.empty() ? 1000 : opt.x_grid.front();
    int k = opt.k_list.empty() ? 2 : opt.k_list.front();
    auto kfull = hl::enumerate_kfull(x, k);
    std::string out;
    for (std::int64_t v : kfull) {
        out += std::to_string(v);
        out += '\n';
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_kfull_count(const Options& opt) {
    int k = opt.k_list.empty() ? 2 : opt.k_list.front();
    std::string out = "x,count,count/x^(1/k)\n";
    for (std::int64_t x : opt.x_grid) {
        auto kfull = hl::enumerate_kfull(x, k);
        double norm = static_cast<double>(kfull.size()) /
                      std::pow(static_cast<double>(x), 1.0 / static_cast<double>(k));
        out += std::to_string(x) + ',' + std::to_string(kfull.size()) + ',' +
               hl::format_double(norm) + '\n';
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

void require_grid_in_range(const Options& opt, std::int64_t n) {
    for (std::int64_t x : opt.x_grid)
        if (x + 1 > n)
            throw CLI::ValidationError("x grid reaches " + std::to_string(x) +
                                       " but the eigen range is " + std::to_string(n));
}

int cmd_progsum(const Options& opt) {
    if (opt.x_grid.empty() || opt.q_list.empty())
        throw CLI::ValidationError("progsum needs non-empty --x and --q lists");
    std::int64_t x_max = *std::max_element(opt.x_grid.begin(), opt.x_grid.end());
    std::int64_t n = opt.n > 0 ? opt.n : x_max + 1;
    require_grid_in_range(opt, n);
    auto eigen = hl::EigenSystem::delta_from_tau(obtain_tau(opt, n));
    hl::FactorTable table(std::max<std::int64_t>(n, opt.cutoff_p));
    auto lambda4 = eigen.lambda4_table();

    std::vector<hl::ReportRow> rows;
    std::vector<std::string> metadata;
    for (std::int64_t q : opt.q_list) {
        auto c1 = hl::compute_c1(q, eigen, table, opt.cutoff_p, opt.cutoff_u);
        auto trend = hl::theorem1_trend(lambda4, q, opt.x_grid, c1, table, opt.threads);
        for (const auto& rep : trend.rows) rows.push_back(hl::make_row(rep));
        metadata.push_back("q=" + std::to_string(q) +
                           " slope=" + hl::format_double(trend.slope) +
                           " reference_exponent=" + hl::format_double(trend.reference_exponent));
    }
    std::fputs(hl::render_report(rows, hl::report_format_from_name(opt.format), metadata).c_str(),
               stdout);
    return 0;
}

int cmd_shiftsum(const Options& opt) {
    if (opt.x_grid.empty() || opt.k_list.empty())
        throw CLI::ValidationError("shiftsum needs non-empty --x and --k lists");
    auto kernel_id = hl::kernel_from_name(opt.kernel);
    std::int64_t x_max = *std::max_element(opt.x_grid.begin(), opt.x_grid.end());
    std::int64_t n = opt.n > 0 ? opt.n : x_max + 1;
    require_grid_in_range(opt, n);
    auto eigen = hl::EigenSystem::delta_from_tau(obtain_tau(opt, n));
    hl::FactorTable table(std::max<std::int64_t>(n, opt.cutoff_p));
    auto lambda4 = eigen.lambda4_table();
    auto c1 = hl::compute_c1(1, eigen, table, opt.cutoff_p, opt.cutoff_u);
    hl::ClosedFormC1 c1_map(c1.value, eigen, table);

    std::vector<hl::ReportRow> rows;
    std::vector<std::string> metadata;
    for (int k : opt.k_list) {
        hl::KernelFunction kernel{kernel_id, k};
        auto c2 = hl::compute_c2(kernel, c1_map, opt.kappa_max, opt.d_max, table);
        auto trend = hl::theorem3_trend(lambda4, kernel, opt.x_grid, c2, table, opt.threads);
        for (const auto& rep : trend.rows) rows.push_back(hl::make_row(rep));
        metadata.push_back("k=" + std::to_string(k) +
                           " slope=" + hl::format_double(trend.slope) +
                           " reference_exponent=" + hl::format_double(trend.reference_exponent));
    }
    std::fputs(hl::render_report(rows, hl::report_format_from_name(opt.format), metadata).c_str(),
               stdout);
    return 0;
}

int cmd_constants(const Options& opt) {
    if (opt.q_list.empty()) throw CLI::ValidationError("constants needs a non-empty --q list");
    auto kernel_id = hl::kernel_from_name(opt.kernel);
    int k = opt.k_list.empty() ? 2 : opt.k_list.front();
    std::int64_t n = std::max<std::int64_t>(opt.n > 0 ? opt.n : opt.cutoff_u, opt.cutoff_u);
    auto eigen = hl::EigenSystem::delta_from_tau(obtain_tau(opt, std::max(n, opt.cutoff_p)));
    hl::FactorTable table(std::max(n, opt.cutoff_p));

    std::vector<hl::ReportRow> rows;
    hl::C1Result base;
    for (std::int64_t q : opt.q_list) {
        auto c1 = hl::compute_c1(q, eigen, table, opt.cutoff_p, opt.cutoff_u);
        if (q == 1) base = c1;
        rows.push_back(hl::make_c1_row(q, c1));
    }
    if (base.value == 0.0) base = hl::compute_c1(1, eigen, table, opt.cutoff_p, opt.cutoff_u);
    hl::KernelFunction kernel{kernel_id, k};
    hl::ClosedFormC1 c1_map(base.value, eigen, table);
    auto c2 = hl::compute_c2(kernel, c1_map, opt.kappa_max, opt.d_max, table);
    rows.push_back(hl::make_c2_row(kernel, c2));
    std::fputs(hl::render_report(rows, hl::report_format_from_name(opt.format)).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"desk-scale laboratory for Hecke eigenvalue sums, Dirichlet "
                 "characters and k-full kernel experiments"};
    app.require_subcommand(1);
    app.add_option("--threads", opt.threads, "worker threads (default: all cores)");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", opt.n, "eigenvalue table range");
        cmd->add_option("--format", opt.format, "output format: csv or json");
        cmd->add_option("--cache", opt.cache, "tau coefficient cache file");
        cmd->add_option("--cutoff-p", opt.cutoff_p, "prime cutoff for L-values at s=1");
        cmd->add_option("--cutoff-u", opt.cutoff_u, "series range for U(1)");
        cmd->add_option("--kmax", opt.kappa_max, "k-full truncation for c2");
        cmd->add_option("--dmax", opt.d_max, "d truncation for c2");
    };

    auto* tau = app.add_subcommand("tau", "build or refresh the tau cache");
    add_common(tau);

    auto* chars = app.add_subcommand("chars", "list the character group mod q");
    chars->add_option("--q", opt.q_single, "modulus")->required();

    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("suite", opt.suite, "one of: hecke characters factorization kfull lemma210 lemma211 split")
        ->required();
    add_common(verify);

    auto* series = app.add_subcommand("series", "dirichlet series utilities");
    series->require_subcommand(1);
    auto* dump = series->add_subcommand("dump", "emit n,re,im rows for a built series");
    dump->add_option("--which", opt.which, "one of: F L sym2 sym4 U");
    dump->add_option("--q", opt.q_single, "character modulus (1 = untwisted)");
    dump->add_option("--chi", opt.chi_index, "character index within the group");
    add_common(dump);
    auto* sver = series->add_subcommand("verify-factorization",
                                        "coefficient identity per character");
    sver->add_option("--q", opt.q_list, "moduli list")->delimiter(',');
    add_common(sver);

    auto* kfull = app.add_subcommand("kfull", "k-full number utilities");
    kfull->require_subcommand(1);
    auto* klist = kfull->add_subcommand("list", "k-full numbers up to x");
    klist->add_option("--x", opt.x_grid, "bound")->delimiter(',');
    klist->add_option("--k", opt.k_list, "order")->delimiter(',');
    auto* kcount = kfull->add_subcommand("count-table", "counts and normalized counts");
    kcount->add_option("--x", opt.x_grid, "bounds")->delimiter(',')->required();
    kcount->add_option("--k", opt.k_list, "order")->delimiter(',');

    auto* progsum = app.add_subcommand("progsum", "progression sum reports");
    progsum->add_option("--x", opt.x_grid, "x grid")->delimiter(',')->required();
    progsum->add_option("--q", opt.q_list, "moduli")->delimiter(',')->required();
    add_common(progsum);

    auto* shiftsum = app.add_subcommand("shiftsum", "shifted convolution reports");
    shiftsum->add_option("--x", opt.x_grid, "x grid")->delimiter(',')->required();
    shiftsum->add_option("--k", opt.k_list, "k list")->delimiter(',')->required();
    shiftsum->add_option("--kernel", opt.kernel, "kernel id");
    shiftsum->add_option("--H", opt.h_list, "split caps (informational)")->delimiter(',');
    add_common(shiftsum);

    auto* constants = app.add_subcommand("constants", "c1 and c2 with brackets");
    constants->add_option("--q", opt.q_list, "moduli for c1")->delimiter(',')->required();
    constants->add_option("--kernel", opt.kernel, "kernel id for c2");
    constants->add_option("--k", opt.k_list, "kernel order")->delimiter(',');
    add_common(constants);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    hl::set_default_thread_count(opt.threads);

    try {
        if (tau->parsed()) return cmd_tau(opt);
        if (chars->parsed()) return cmd_chars(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (series->parsed()) {
            if (dump->parsed()) return cmd_series_dump(opt);
            if (sver->parsed()) return cmd_series_verify(opt);
        }
        if (kfull->parsed()) {
            if (klist->parsed()) return cmd_kfull_list(opt);
            if (kcount->parsed()) return cmd_kfull_count(opt);
        }
        if (progsum->parsed()) return cmd_progsum(opt);
        if (shiftsum->parsed()) return cmd_shiftsum(opt);
        if (constants->parsed()) return cmd_constants(opt);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
