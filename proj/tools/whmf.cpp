// whmf: expansion, coefficient, verification, and scan commands over the
// weakly holomorphic modular forms library. Exit codes: 0 success / all
// checks pass, 1 a mathematical check failed, 2 usage or precision error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "whmf/cache.hpp"
#include "whmf/formspec.hpp"
#include "whmf/verifier.hpp"

namespace {

std::string vp_text(const mpz_class& a, long p) {
    if (a == 0) return "inf";
    return std::to_string(whmf::vp_int(a, p));
}

std::string series_json(const std::string& spec, const whmf::QSeries& f) {
    std::string s = "{\"spec\":\"" + spec + "\",\"val\":" +
                    std::to_string(f.val()) +
                    ",\"prec\":" + std::to_string(f.prec()) + ",\"coeffs\":[";
    for (long n = f.val(); n < f.prec(); ++n) {
        if (n > f.val()) s += ',';
        s += '"' + f.coeff(n).get_str() + '"';
    }
    return s + "]}";
}

void write_out(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body << "\n";
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body << "\n";
}

constexpr long kWeights[] = {4, 6, 8, 10, 14};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-expansions and divisibility certificates for "
                 "weakly holomorphic modular forms"};
    app.require_subcommand(1);

    // ---- expand ----------------------------------------------------------
    std::string ex_spec, ex_format = "text", ex_cache_dir;
    long ex_prec = 64;
    auto* expand = app.add_subcommand(
        "expand", "print the q-expansion of a form (see README for specs)");
    expand->add_option("spec", ex_spec, "form spec, e.g. f:4:1 or theta:-12:2")
        ->required();
    expand->add_option("--prec", ex_prec, "window upper bound (default 64)");
    expand->add_option("--format", ex_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    expand->add_option("--cache-dir", ex_cache_dir,
                       "cache directory (else WHMF_CACHE_DIR, else .whmf-cache)");

    // ---- coeff -----------------------------------------------------------
    long c_k = 0, c_m = 0, c_n = 0;
    auto* coeff = app.add_subcommand(
        "coeff", "print a_k(m,n) with its 2-, 3-, and 5-adic valuations");
    coeff->add_option("k", c_k, "weight")->required();
    coeff->add_option("m", c_m, "basis index")->required();
    coeff->add_option("n", c_n, "coefficient index")->required();

    // ---- verify ----------------------------------------------------------
    long v_p = 0, v_k = 0, v_prec = 0;
    bool v_all = false;
    std::string v_out;
    auto* verify = app.add_subcommand(
        "verify", "run the divisibility certificate pipeline for (p, k)");
    verify->add_option("--p", v_p, "level in {2,3,5}");
    verify->add_option("--k", v_k, "weight in {4,6,8,10,14}");
    verify->add_option("--prec", v_prec,
                       "override precision (default: rule with floor 500)");
    verify->add_flag("--all", v_all, "run all 15 (p,k) pairs");
    verify->add_option("--out", v_out, "write the JSON report here");

    // ---- scan ------------------------------------------------------------
    long s_p = 0, s_k = 0, s_mmax = 0, s_nmax = 0, s_smax = 0;
    auto* scan = app.add_subcommand(
        "scan", "check the valuation bound over a coefficient grid");
    scan->add_option("--p", s_p, "level in {2,3,5}")->required();
    scan->add_option("--k", s_k, "weight in {4,6,8,10,14}")->required();
    scan->add_option("--mmax", s_mmax, "largest m")->required();
    scan->add_option("--nmax", s_nmax, "largest n")->required();
    scan->add_option("--smax", s_smax, "also scan (m p^s, n) for s <= smax");

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed()) {
            const whmf::FormSpec spec = whmf::parse_form_spec(ex_spec);
            const std::string key =
                spec.text() + "@" + std::to_string(ex_prec);
            const whmf::SeriesCache cache =
                whmf::SeriesCache::resolve(ex_cache_dir);
            whmf::QSeries f = [&] {
                if (auto hit = cache.load(key)) return *hit;
                whmf::QSeries fresh = whmf::build_form(spec, ex_prec);
                cache.store(key, fresh);
                return fresh;
            }();
            if (ex_format == "json")
                std::cout << series_json(spec.text(), f) << "\n";
            else
                std::cout << whmf::to_text(f);
            return 0;
        }

        if (coeff->parsed()) {
            const mpz_class a = whmf::a_coeff(c_k, c_m, c_n);
            std::cout << "a_" << c_k << "(" << c_m << ", " << c_n
                      << ") = " << a.get_str() << "\n"
                      << "v_2 = " << vp_text(a, 2) << ", v_3 = " << vp_text(a, 3)
                      << ", v_5 = " << vp_text(a, 5) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            if (v_all ? (v_p != 0 || v_k != 0) : (v_p == 0 || v_k == 0)) {
                std::cerr << "verify: pass either --all or both --p and --k\n";
                return 2;
            }
            std::vector<whmf::VerificationReport> reports;
            if (v_all) {
                // p descending reuses the big canonical-form ladders downward
                for (const long p : {5L, 3L, 2L})
                    for (const long k : kWeights)
                        reports.push_back(whmf::verify_certificates(p, k, v_prec));
            } else {
                reports.push_back(whmf::verify_certificates(v_p, v_k, v_prec));
            }
            bool pass = true;
            std::string body = v_all ? "[" : "";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                pass = pass && reports[i].pass;
                if (i) body += ',';
                body += whmf::report_to_json(reports[i]);
            }
            if (v_all) body += "]";
            write_out(v_out, body);
            return pass ? 0 : 1;
        }

        if (scan->parsed()) {
            const whmf::ScanReport rep =
                whmf::scan_valuation_bound(s_p, s_k, s_mmax, s_nmax, s_smax);
            std::cout << "scan p=" << rep.p << " k=" << rep.k
                      << " m<=" << rep.m_max << " n<=" << rep.n_max
                      << " s<=" << rep.s_max << ": checked " << rep.checked
                      << ", skipped " << rep.skipped << " (equal valuations), "
                      << rep.violations.size() << " violation(s)\n";
            for (const auto& v : rep.violations)
                std::cout << "  VIOLATION m=" << v.m << " n=" << v.n
                          << " required v_p >= " << v.bound << " got "
                          << v.actual << "\n";
            return rep.violations.empty() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
