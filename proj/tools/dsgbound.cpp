#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "dsg/knot_dsl.hpp"
#include "dsg/report.hpp"

namespace {

int run_bound_command(const std::string& knot_text, const dsg::ReportOptions& options) {
    dsg::KnotSpec spec;
    try {
        spec = dsg::parse_knot(knot_text);
    } catch (const dsg::ParseError& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << " (at offset " << e.position()
                  << ")\n";
        return 1;
    }
    try {
        nlohmann::ordered_json report = dsg::run_bound(spec, options);
        std::cout << report.dump(2) << "\n";
        return dsg::report_exit_code(report);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error[E_INPUT]: " << e.what() << "\n";
        return 1;
    }
}

int run_cg_table_command(long long p, long long q, long long d,
                         const std::optional<std::string>& cache_dir) {
    try {
        dsg::LensSpace lens{p, q, +1};
        lens.validate();
        if (d < 1 || p % d != 0) {
            std::cerr << "error[E_LENS_PARAMS]: table modulus d must divide p\n";
            return 1;
        }
        auto table = cache_dir ? dsg::CGTableCache(*cache_dir).table(lens, d)
                               : dsg::cg_table(lens, d);
        std::cout << dsg::format_cg_table(table);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error[E_LENS_PARAMS]: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double slice genus lower bounds from Casson-Gordon signatures"};
    app.require_subcommand(1);

    std::string knot_text;
    dsg::ReportOptions options;
    std::string cache_dir;
    long long max_homs = dsg::kDefaultHomCap;
    long long max_pairs = 10000;
    int max_n = 3;
    long long entry_bound = 0;
    int threads = 1;

    CLI::App* bound = app.add_subcommand("bound", "Compute the bound report for a knot");
    bound->add_option("knot", knot_text, "Knot expression, e.g. \"2b(9/4)^2\"")->required();
    bound->add_option("--max-pairs", max_pairs, "Cap on candidate (G1, G2) pairs");
    bound->add_option("--max-homs", max_homs, "Cap on character/surjection enumerations");
    bound->add_option("--max-n", max_n, "Cap on n1+n2 in the theta_1 certificate search");
    bound->add_option("--entry-bound", entry_bound,
                      "Compatibility knob for the certificate search (see README)");
    bound->add_option("--threads", threads, "Worker threads for enumerations");
    bound->add_option("--cache-dir", cache_dir, "Casson-Gordon table cache directory");
    bool ribbon = false, verbose = false;
    bound->add_flag("--ribbon", ribbon, "Assert the knot is ribbon");
    bound->add_flag("--verbose", verbose, "Include the per-pair theta_1 interval table");

    long long p = 0, q = 0, d = 0;
    CLI::App* cg = app.add_subcommand("cg-table", "Print the lens space signature table");
    cg->add_option("p", p, "Lens space order p")->required();
    cg->add_option("q", q, "Lens space parameter q")->required();
    cg->add_option("d", d, "Character modulus d (must divide p)")->required();
    cg->add_option("--cache-dir", cache_dir, "Casson-Gordon table cache directory");

    CLI11_PARSE(app, argc, argv);

    std::optional<std::string> cache;
    if (!cache_dir.empty())
        cache = cache_dir;
    else if (const char* env = std::getenv("DSGBOUND_CACHE_DIR"); env && *env)
        cache = std::string(env);

    if (app.got_subcommand("cg-table")) return run_cg_table_command(p, q, d, cache);

    options.caps.max_homs = max_homs;
    options.caps.max_pairs = max_pairs;
    options.caps.max_n = max_n;
    options.caps.entry_bound = entry_bound;
    options.caps.threads = threads;
    options.ribbon_flag = ribbon;
    options.verbose = verbose;
    if (cache) options.cache_dir = *cache;
    return run_bound_command(knot_text, options);
}
