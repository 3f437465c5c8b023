#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <etakit/report.hpp>
#include <etakit/series_io.hpp>
#include <etakit/verify.hpp>
#include <etakit_corpus.hpp>

using namespace etakit;

namespace {

constexpr int kBadInput = 2;

std::vector<Scenario> corpus() {
    std::vector<Scenario> out;
    for (auto text : scenario_corpus) out.push_back(parse_scenario(std::string(text)));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::int64_t> parse_ell_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        const auto v = std::stoll(tok, &used);
        if (used != tok.size()) throw invalid_argument("bad prime list '" + s + "'");
        PrimeField{v};
        out.push_back(v);
    }
    if (out.empty()) throw invalid_argument("empty prime list");
    return out;
}

int cmd_basis(std::int64_t k, const std::string& kind, std::int64_t ell, std::optional<std::int64_t> prec) {
    if (kind != "M" && kind != "S") throw invalid_argument("--kind must be M or S");
    if (k < 0 || k % 2 != 0) throw invalid_argument("--weight must be a nonnegative even integer");
    PrimeField{ell};
    const auto P = prec.value_or(24 * (sturm_depth(k) + 1));
    const auto B = miller_basis(k, ell, P, kind == "M" ? SpaceKind::full : SpaceKind::cuspidal);
    for (std::size_t i = 0; i < B.elements.size(); ++i) {
        if (i) std::cout << '\n';
        write_series(std::cout, B.elements[i],
                     {{"weight", std::to_string(k)},
                      {"kind", kind},
                      {"index", std::to_string(i)},
                      {"pivot", std::to_string(B.pivots[i])}});
    }
    return 0;
}

int cmd_classify(std::int64_t ell, const std::string& recipe_file, const std::string& series_file,
                 std::optional<std::int64_t> lambda, std::optional<std::int64_t> r, bool assert_member) {
    const auto form = [&] {
        if (!recipe_file.empty()) {
            const auto s = parse_scenario(read_file(recipe_file));
            const auto l = scenario_ell(s, ell);
            return build_recipe(s.recipe, l, effective_prec(eval_expr(s.prec, l)));
        }
        if (!lambda || !r) throw invalid_argument("--series needs --lambda and --r");
        if (!assert_member) throw invalid_argument("--series input requires --assert-member");
        std::ifstream in(series_file);
        if (!in) throw invalid_argument("cannot open '" + series_file + "'");
        auto block = read_series(in);
        auto* f = std::get_if<FSeries>(&block.series);
        if (!f) throw invalid_argument("--series must be over Fp");
        if (static_cast<std::int64_t>(f->ring().ell()) != ell)
            throw invalid_argument("series prime differs from --ell");
        return certify(*f, *lambda, *r);
    }();
    const auto rep = classify(form);
    std::cout << to_json(rep).dump(2) << '\n';
    return exit_code(rep);
}

void print_table(const std::vector<SuiteRow>& rows) {
    std::size_t w = 8;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    std::printf("%-*s  %-4s  %-40s  %8s  %9s\n", static_cast<int>(w), "scenario", "ok", "verdict", "depth",
                "runtime");
    for (const auto& r : rows)
        std::printf("%-*s  %-4s  %-40s  %8lld  %8.3fs\n", static_cast<int>(w), r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.verdict.c_str(), static_cast<long long>(r.depth), r.seconds);
}

std::vector<SuiteRow> run_tasks(const std::vector<std::function<SuiteRow()>>& tasks, unsigned jobs) {
    std::vector<SuiteRow> rows(tasks.size());
    jobs = std::max(1u, jobs);
    for (std::size_t start = 0; start < tasks.size(); start += jobs) {
        std::vector<std::future<SuiteRow>> futs;
        for (std::size_t i = start; i < std::min(tasks.size(), start + jobs); ++i)
            futs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, tasks[i]));
        for (std::size_t i = 0; i < futs.size(); ++i) rows[start + i] = futs[i].get();
    }
    return rows;
}

int cmd_verify(const std::string& suite, const std::string& ells, unsigned jobs) {
    std::vector<std::function<SuiteRow()>> tasks;
    if (suite == "paper-examples") {
        const auto list = parse_ell_list(ells);
        const auto scns = corpus();
        for (const auto& s : scns)
            if (s.ell) tasks.push_back([s] { return scenario_row(s, scenario_ell(s, std::nullopt)); });
        for (auto ell : list) {
            for (const auto& s : scns)
                if (!s.ell) tasks.push_back([s, ell] { return scenario_row(s, ell); });
            tasks.push_back([ell] { return descent_row(ell); });
            tasks.push_back([ell] { return bruinier_ono_row(ell); });
            if (((ell - 1) / 2) % 2 == 1) tasks.push_back([ell] { return *odd_lambda_row(ell); });
            tasks.push_back([ell] { return spicy_row(ell); });
        }
    } else if (suite == "filtration-laws") {
        for (auto ell : parse_ell_list(ells)) tasks.push_back([ell] { return filtration_laws_row(ell); });
    } else if (suite == "multiplier-numeric") {
        tasks.push_back([] {
            return detail::timed("multiplier numerics", [] {
                const auto m = multiplier_numeric();
                const bool ok = m.max_eta_deviation < 1e-8 && m.max_theta_deviation < 1e-8 &&
                                m.cocycle_failures == 0 && m.epsilon_ok && m.order_24_ok;
                char buf[96];
                std::snprintf(buf, sizeof buf, "eta %.2e theta %.2e cocycle fails %d", m.max_eta_deviation,
                              m.max_theta_deviation, m.cocycle_failures);
                return SuiteRow{"", ok, buf, 0, 0};
            });
        });
    } else {
        throw invalid_argument("unknown suite '" + suite + "'");
    }
    const auto rows = run_tasks(tasks, jobs);
    print_table(rows);
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return !r.pass; });
    std::printf("%zu checks, %td failed\n", rows.size(), failed);
    return failed ? 1 : 0;
}

int cmd_verify_multiplier(int samples, std::uint64_t seed) {
    const auto m = multiplier_numeric(samples, seed);
    nlohmann::ordered_json j;
    j["samples"] = m.samples;
    j["max_eta_deviation"] = m.max_eta_deviation;
    j["max_theta_deviation"] = m.max_theta_deviation;
    j["cocycle_failures"] = m.cocycle_failures;
    j["nu24_is_one"] = m.order_24_ok;
    j["epsilon_identities"] = m.epsilon_ok;
    std::cout << j.dump(2) << '\n';
    const bool ok = m.max_eta_deviation < 1e-8 && m.max_theta_deviation < 1e-8 && m.cocycle_failures == 0 &&
                    m.epsilon_ok && m.order_24_ok;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etakit: modular forms mod l and the square-class classification"};
    app.require_subcommand(1);

    std::int64_t weight = 0, ell = 5;
    std::string kind = "M";
    std::optional<std::int64_t> prec;
    auto* basis = app.add_subcommand("basis", "dump the echelon basis of M_k or S_k mod l");
    basis->add_option("--weight", weight)->required();
    basis->add_option("--kind", kind);
    basis->add_option("--ell", ell);
    basis->add_option("--prec", prec, "precision in 1/24-units");

    std::string recipe, series;
    std::optional<std::int64_t> lambda, r;
    bool assert_member = false;
    auto* cls = app.add_subcommand("classify", "classify a scenario recipe or a series file");
    cls->add_option("--ell", ell);
    auto* rec_opt = cls->add_option("--recipe", recipe, "scenario file");
    auto* ser_opt = cls->add_option("--series", series, "series text file");
    rec_opt->excludes(ser_opt);
    cls->add_option("--lambda", lambda);
    cls->add_option("--r", r);
    cls->add_flag("--assert-member", assert_member, "certify the series before classifying");

    std::string suite, ells = "5,7,11,13";
    unsigned jobs = 1;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite)->required();
    ver->add_option("--ell", ells, "comma-separated primes");
    ver->add_option("--jobs", jobs);

    int samples = 100;
    std::uint64_t seed = 7;
    auto* vm = app.add_subcommand("verify-multiplier", "numeric multiplier checks as JSON");
    vm->add_option("--samples", samples);
    vm->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }

    try {
        if (*basis) return cmd_basis(weight, kind, ell, prec);
        if (*cls) {
            if (recipe.empty() && series.empty()) throw invalid_argument("need --recipe or --series");
            return cmd_classify(ell, recipe, series, lambda, r, assert_member);
        }
        if (*ver) return cmd_verify(suite, ells, jobs);
        if (*vm) return cmd_verify_multiplier(samples, seed);
    } catch (const error& e) {
        std::cerr << "etakit: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "etakit: " << e.what() << '\n';
        return kBadInput;
    }
    return 0;
}
