#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "triq/verify.hpp"

using namespace triq;

namespace {

std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::MT1A: return "MT1A";
        case Theorem::MT3: return "MT3";
        default: return "MT4";
    }
}

constexpr const char* kScanHeader =
    "p1,p2,p1mod8,p2mod8,n1,n2,n3,n4,case,qK,h2K,qL,h2L,resolved_by_search";

std::string csv_row(const CaseReport& r) {
    std::ostringstream os;
    os << r.p1.get_str() << ',' << r.p2.get_str() << ',' << r.p1_mod8 << ',' << r.p2_mod8 << ','
       << r.signature.n1 << ',' << r.signature.n2 << ',' << r.signature.n3 << ','
       << r.signature.n4 << ',' << theorem_name(r.case_id.theorem) << '.' << r.case_id.item << ','
       << r.qK.get_str() << ',' << r.h2K.get_str() << ','
       << (r.L.qL ? r.L.qL->get_str() : "") << ',' << (r.L.h2L ? r.L.h2L->get_str() : "") << ','
       << (r.resolved_by_search ? 1 : 0);
    return os.str();
}

std::string text_report(const CaseReport& r) {
    std::ostringstream os;
    os << "pair (" << r.p1.get_str() << ", " << r.p2.get_str() << ")  [" << r.p1_mod8 << ", "
       << r.p2_mod8 << " mod 8]\n";
    os << "signature (" << r.signature.n1 << ", " << r.signature.n2 << ", " << r.signature.n3
       << ", " << r.signature.n4 << ")\n";
    os << "case " << r.case_id.label() << (r.case_id.swapped ? " (roles swapped)" : "") << "\n";
    os << "generators:\n";
    for (const auto& g : r.generators) os << "  " << g.label << "\n";
    os << "q(K) = " << r.qK.get_str() << (r.resolved_by_search ? "  (resolved by search)" : "")
       << "\n";
    os << "h2(K) = " << r.h2K.get_str() << "\n";
    if (r.L.covered) {
        os << "q(L) = " << r.L.qL->get_str();
        if (r.L.h2L) os << ", h2(L) = " << r.L.h2L->get_str();
        os << "\n";
    }
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

void emit_error(const char* kind, const std::string& msg) {
    nlohmann::ordered_json e;
    e["schema"] = 1;
    e["error"] = kind;
    e["message"] = msg;
    std::cerr << e.dump() << "\n";
}

struct CacheGuard {
    std::string path;
    explicit CacheGuard(std::string p) : path(std::move(p)) {
        if (!path.empty()) load_unit_cache(path);
    }
    ~CacheGuard() {
        if (!path.empty()) save_unit_cache(path);
    }
};

std::vector<Int> scan_primes(long max_prime) {
    std::vector<Int> ps;
    Int p = 2;
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > max_prime) break;
        if (p % 4 == 1) ps.push_back(p);
    }
    return ps;
}

int run_scan(long max_prime, const std::string& sig_filter, const std::string& mod8_filter,
             int jobs) {
    if (max_prime < 13) throw precondition_error("scan: --max must be >= 13");
    std::optional<NormSignature> want_sig;
    if (!sig_filter.empty()) {
        NormSignature s{};
        if (std::sscanf(sig_filter.c_str(), "%d,%d,%d,%d", &s.n1, &s.n2, &s.n3, &s.n4) != 4)
            throw precondition_error("scan: bad --sig, expected n1,n2,n3,n4");
        want_sig = s;
    }
    std::optional<std::pair<int, int>> want_mod8;
    if (!mod8_filter.empty()) {
        int m1, m2;
        if (std::sscanf(mod8_filter.c_str(), "%d,%d", &m1, &m2) != 2)
            throw precondition_error("scan: bad --mod8, expected m1,m2");
        want_mod8 = {m1, m2};
    }

    std::vector<Int> ps = scan_primes(max_prime);
    std::vector<std::pair<Int, Int>> pairs;
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) pairs.emplace_back(ps[i], ps[j]);

    std::vector<std::string> rows(pairs.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mutex;
    auto work = [&] {
        for (size_t k; (k = next.fetch_add(1)) < pairs.size();) {
            if (failed) return;
            try {
                CaseReport r = analyze(pairs[k].first, pairs[k].second);
                bool keep = true;
                if (want_sig && !(r.signature == *want_sig)) keep = false;
                if (want_mod8 && (r.p1_mod8 != want_mod8->first || r.p2_mod8 != want_mod8->second))
                    keep = false;
                if (keep) rows[k] = csv_row(r);
            } catch (const std::exception& e) {
                std::lock_guard lk(err_mutex);
                if (!failed) first_error = e.what();
                failed = true;
            }
        }
    };
    int n = std::max(1, jobs);
    std::vector<std::thread> threads;
    for (int t = 1; t < n; ++t) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
    if (failed) throw inconsistency_error("scan: " + first_error);

    std::cout << kScanHeader << "\n";
    for (const auto& row : rows)
        if (!row.empty()) std::cout << row << "\n";
    return 0;
}

int run_verify(const std::string& suite, long bound, mpfr_prec_t prec) {
    if (suite == "table1") {
        bool ok = true;
        for (const Table1Row& r : run_table1()) {
            std::cout << "(" << r.p1.get_str() << "," << r.p2.get_str() << ") "
                      << (r.pass ? "pass" : "FAIL") << "\n";
            if (!r.pass) {
                std::cout << r.detail << "\n";
                ok = false;
            }
        }
        return ok ? 0 : 1;
    }
    if (suite == "sweep") {
        auto reports = sweep_properties(bound);
        std::cout << sweep_report_json(reports) << "\n";
        for (const auto& r : reports)
            if (!r.ok()) return 1;
        return 0;
    }
    if (suite == "index") {
        auto pairs = default_index_pairs(bound);
        SweepReport rep{"index_oracle"};
        for (const auto& [a, b] : pairs) {
            CaseReport r = analyze(a, b);
            Int idx = verify_index(r.generators, a, b, prec);
            bool ok = idx == r.qK;
            std::cout << "(" << a.get_str() << "," << b.get_str() << ") dispatched "
                      << r.qK.get_str() << " regulator " << idx.get_str() << " "
                      << (ok ? "pass" : "FAIL") << "\n";
            if (!ok) rep.violations.push_back("index mismatch");
        }
        return rep.ok() ? 0 : 1;
    }
    throw precondition_error("verify: unknown suite '" + suite + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact unit-index and 2-class-number computations for Q(sqrt 2, sqrt p1, sqrt p2)"};
    app.require_subcommand(1);

    std::string cache_path;
    if (const char* env = std::getenv("TRIQ_CACHE")) cache_path = env;
    app.add_option("--cache", cache_path, "unit cache file (env TRIQ_CACHE)");
    long precision = 256;
    if (const char* env = std::getenv("TRIQ_PRECISION")) precision = std::atol(env);
    app.add_option("--precision", precision, "starting interval precision in bits (env TRIQ_PRECISION)");

    auto* cmd_analyze = app.add_subcommand("analyze", "analyze one prime pair");
    cmd_analyze->fallthrough();  // --cache/--precision may follow the subcommand
    long a_p1 = 0, a_p2 = 0;
    std::string format = "text";
    cmd_analyze->add_option("p1_pos", a_p1, "first prime")->group("");
    cmd_analyze->add_option("p2_pos", a_p2, "second prime")->group("");
    cmd_analyze->add_option("--p1", a_p1, "first prime");
    cmd_analyze->add_option("--p2", a_p2, "second prime");
    cmd_analyze->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* cmd_scan = app.add_subcommand("scan", "scan all pairs up to a bound");
    cmd_scan->fallthrough();
    long max_prime = 0;
    std::string sig_filter, mod8_filter;
    int jobs = 1;
    cmd_scan->add_option("--max", max_prime, "largest prime to include")->required();
    cmd_scan->add_option("--sig", sig_filter, "keep only this norm signature, e.g. -1,-1,-1,-1");
    cmd_scan->add_option("--mod8", mod8_filter, "keep only this (p1 mod 8, p2 mod 8), e.g. 1,5");
    cmd_scan->add_option("--jobs", jobs, "worker threads");

    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->fallthrough();
    std::string suite;
    long bound = 500;
    cmd_verify->add_option("suite", suite, "table1, sweep or index")->required();
    cmd_verify->add_option("--bound", bound, "sweep/index bound");

    CLI11_PARSE(app, argc, argv);

    try {
        CacheGuard cache(cache_path);
        if (*cmd_analyze) {
            if (a_p1 == 0 || a_p2 == 0)
                throw precondition_error("analyze: both primes are required");
            CaseReport r = analyze(a_p1, a_p2);
            if (format == "json")
                std::cout << r.to_json() << "\n";
            else if (format == "csv")
                std::cout << kScanHeader << "\n" << csv_row(r) << "\n";
            else
                std::cout << text_report(r);
            return 0;
        }
        if (*cmd_scan) return run_scan(max_prime, sig_filter, mod8_filter, jobs);
        return run_verify(suite, bound, precision);
    } catch (const precondition_error& e) {
        emit_error("precondition", e.what());
        return 2;
    } catch (const inconsistency_error& e) {
        emit_error("inconsistency", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
}
