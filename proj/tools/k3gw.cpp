// k3gw: command-line front end.
//
//   k3gw expand <name> [--qmax N] [--d D]
//   k3gw wdvv solve|verify [--qmax N] [--kwindow K]
//   k3gw bracket "<mu>" "<nu>" [--model M] [--fit]
//   k3gw verify <suite>... [--long] [--hmax H] [--mode full|sampled]
//
// Settings resolve as flags > environment (K3GW_QMAX, K3GW_WORDER, K3GW_MODEL,
// K3GW_MODE, K3GW_CACHE_DIR, K3GW_FORMAT) > config file (--config, else
// $K3GW_CONFIG) > defaults. Exit codes: 0 ok, 1 verification failure, 2 usage.
#include "k3gw/ematrix.hpp"
#include "k3gw/gw.hpp"
#include "k3gw/jacobi.hpp"
#include "k3gw/json_io.hpp"
#include "k3gw/suites.hpp"
#include "k3gw/wdvv.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef K3GW_VERSION
#define K3GW_VERSION "dev"
#endif

using namespace k3gw;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int q_max = 5;
    int w_order = 8;
    std::string model = "k3-rank24";
    std::string mode = "sampled";
    std::string cache_dir;  // empty: no cache
    std::string format = "json";
};

int to_int(const std::string& v, const std::string& what) {
    try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos == v.size()) return x;
    } catch (const std::exception&) {
    }
    throw UsageError(what + ": expected an integer, got '" + v + "'");
}

void set_key(Config& c, const std::string& key, const std::string& v, const std::string& from) {
    if (key == "q_max")
        c.q_max = to_int(v, from + " q_max");
    else if (key == "w_order")
        c.w_order = to_int(v, from + " w_order");
    else if (key == "model")
        c.model = v;
    else if (key == "mode")
        c.mode = v;
    else if (key == "cache_dir")
        c.cache_dir = v;
    else if (key == "format")
        c.format = v;
    else
        throw UsageError(from + ": unknown key '" + key + "' (valid: q_max w_order model mode cache_dir format)");
}

void load_config_file(Config& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file " + path + ": expected a JSON object");
    for (auto& [k, v] : j.items()) set_key(c, k, v.is_string() ? v.get<std::string>() : v.dump(), path);
}

void load_env(Config& c) {
    const std::pair<const char*, const char*> vars[] = {
        {"K3GW_QMAX", "q_max"},   {"K3GW_WORDER", "w_order"},       {"K3GW_MODEL", "model"},
        {"K3GW_MODE", "mode"},    {"K3GW_CACHE_DIR", "cache_dir"},  {"K3GW_FORMAT", "format"},
    };
    for (auto [env, key] : vars)
        if (const char* v = std::getenv(env)) set_key(c, key, v, env);
}

void validate(const Config& c) {
    if (c.q_max < 0) throw UsageError("q_max must be >= 0");
    if (c.w_order < 2) throw UsageError("w_order must be >= 2");
    if (c.mode != "full" && c.mode != "sampled") throw UsageError("mode must be full or sampled");
    if (c.format != "json" && c.format != "csv" && c.format != "pretty")
        throw UsageError("format must be json, csv or pretty");
    auto names = SurfaceModel::model_names();
    if (std::find(names.begin(), names.end(), c.model) == names.end()) {
        std::string all;
        for (auto& n : names) all += " " + n;
        throw UsageError("unknown model '" + c.model + "' (valid:" + all + ")");
    }
}

// ---------------------------------------------------------------------------
// cache: one file per key, holding {"version", "key", "value"}

std::string cache_path(const Config& c, const Json& key) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : key.dump()) h = (h ^ ch) * 1099511628211ull;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return (fs::path(c.cache_dir) / (key.at("op").get<std::string>() + "-" + buf + ".json")).string();
}

template <class Compute>
Json cached(const Config& c, Json key, Compute compute) {
    if (c.cache_dir.empty()) return compute();
    std::string path = cache_path(c, key);
    if (std::ifstream in(path); in) {
        try {
            Json entry = Json::parse(in);
            // stale versions are ignored and overwritten
            if (entry.at("version") == K3GW_VERSION && entry.at("key") == key) return entry.at("value");
        } catch (const std::exception&) {
        }
    }
    Json value = compute();
    std::error_code ec;
    fs::create_directories(c.cache_dir, ec);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << Json{{"version", K3GW_VERSION}, {"key", key}, {"value", value}}.dump() << "\n";
    }
    fs::rename(tmp, path, ec);
    return value;
}

// ---------------------------------------------------------------------------
// rendering

std::string series_csv(const QSeries& x) {
    std::ostringstream os;
    os << "q,s,re,im\n";
    for (int n = x.q_min(); n <= x.q_max(); ++n) {
        const SRat& c = x[n];
        if (c.is_zero()) continue;
        if (!c.is_laurent()) {
            os << n << ",rational," << c.str() << ",\n";
            continue;
        }
        SLaurent l = c.to_laurent();
        for (const auto& [e, v] : l.terms()) os << n << "," << e << "," << v.re().get_str() << "," << v.im().get_str() << "\n";
    }
    return os.str();
}

void emit_series(const Config& c, const Json& value) {
    if (c.format == "json") {
        std::cout << value.dump(2) << "\n";
        return;
    }
    QSeries x = qseries_from_json(value.at("series"));
    if (c.format == "csv") {
        std::cout << series_csv(x);
        return;
    }
    for (auto& [k, v] : value.items())
        if (k != "series") std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (int n = x.q_min(); n <= x.q_max(); ++n) {
        const SRat& r = x[n];
        if (r.is_zero()) continue;
        std::cout << "q^" << n << ": " << (r.is_laurent() ? r.to_laurent().str() : r.str()) << "\n";
    }
    std::cout << "O(q^" << x.q_max() + 1 << ")\n";
}

// ---------------------------------------------------------------------------
// commands

const char* kGeneratorNames =
    "F K J1 wp wp_prime E2 E4 E6 ... J2_<n> J3_<n> G_<n> Eta Delta Theta1 G Theta_D4, "
    "and the series mthm0 mthm1 mthm2 mthm3 extra genus1";

int cmd_expand(const Config& c, const std::string& name, int d) {
    Json key{{"op", "expand"}, {"name", name}, {"q_max", c.q_max}, {"d", d}};
    Json value = cached(c, key, [&] {
        Json v{{"name", name}, {"q_max", c.q_max}};
        if (name == "genus1") {
            v["series"] = to_json(genus1_closed_form(c.q_max));
            return v;
        }
        std::optional<Series> s;
        try {
            s = parse_series(name);
        } catch (const std::invalid_argument&) {
        }
        if (s) {
            v["d"] = d;
            try {
                v["series"] = to_json(theorem_closed_form(*s, d, c.q_max));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return v;
        }
        QuasiJacobiForm f;
        try {
            f = generator(name, c.q_max);
        } catch (const std::invalid_argument&) {
            throw UsageError("unknown name '" + name + "' (valid: " + kGeneratorNames + ")");
        }
        v["weight"] = f.weight().get_str();
        v["index"] = f.index().get_str();
        v["q_shift"] = f.q_shift.get_str();
        v["q_scale"] = f.q_scale;
        v["series"] = to_json(f.series);
        return v;
    });
    emit_series(c, value);
    return 0;
}

CoeffTable truncate_rows(CoeffTable t, int q_max) {
    for (Pot p : {Pot::H, Pot::I, Pot::T})
        std::erase_if(t.table(p), [&](const auto& kv) { return kv.first.first > q_max; });
    t.q_max = q_max;
    return t;
}

std::string table_csv_from_json(const Json& j) {
    std::ostringstream os;
    os << "d,k,H,I,T\n";
    for (const auto& r : j.at("coefficients")) {
        os << r.at("d").get<int>() << "," << r.at("k").get<int>();
        for (const char* p : {"H", "I", "T"}) os << "," << (r.at(p).is_null() ? "" : r.at(p).get<std::string>());
        os << "\n";
    }
    return os.str();
}

int cmd_wdvv(const Config& c, const std::string& sub, std::optional<int> kwindow) {
    int q = std::max(c.q_max, 1);
    int kw = kwindow.value_or(2 * q + 2);
    if (kw < 2 * q) throw UsageError("--kwindow must be >= 2 qmax");
    if (sub == "solve") {
        Json key{{"op", "wdvv"}, {"q_max", c.q_max}, {"k_window", kw}};
        Json value = cached(c, key, [&] {
            CoeffTable t = solve(q, kw);
            if (c.q_max == q) return to_json(t);
            // q_max = 0: the d = 0 row is fixed by the seeds and the d = 1 step
            Json j = to_json(truncate_rows(t, c.q_max));
            j.erase("H");
            j.erase("I");
            return j;
        });
        if (c.format == "json")
            std::cout << value.dump(2) << "\n";
        else
            std::cout << table_csv_from_json(value);
        return 0;
    }
    CoeffTable t = solve(q, kw);
    std::vector<std::pair<std::string, WdvvReport>> reps = {
        {"residuals", residual_check(t)},
        {"closed forms", verify_closed_forms(t)},
        {"I from H", ito_h_check(t)},
    };
    for (const auto& [name, r] : reps)
        if (!r.ok) {
            std::cout << "FAIL " << name << ": " << r.first_failure << "\n";
            return 1;
        }
    std::cout << "OK\n";
    return 0;
}

int predicted_weight(const SurfaceModel& S, const NakMonomial& a, const NakMonomial& b, bool& known) {
    int wt = 2;
    known = true;
    for (const auto* m : {&a, &b})
        for (const auto& part : m->parts) {
            auto u = underline_deg(S, part.second);
            if (!u) known = false;
            else wt += *u;
        }
    return wt;
}

int cmd_bracket(const Config& c, const std::string& mu_text, const std::string& nu_text, bool fit) {
    const SurfaceModel S = SurfaceModel::by_name(c.model);
    NakMonomial mu, nu;
    try {
        mu = NakMonomial::parse(S, mu_text);
        nu = NakMonomial::parse(S, nu_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (mu.energy() != nu.energy())
        throw UsageError("energy mismatch: '" + mu.str(S) + "' has energy " + std::to_string(mu.energy()) + ", '" +
                         nu.str(S) + "' has energy " + std::to_string(nu.energy()));
    Json key{{"op", "bracket"}, {"model", c.model}, {"mu", mu.str(S)}, {"nu", nu.str(S)},
             {"q_max", c.q_max}, {"fit", fit}, {"w_order", c.w_order}};
    Json value = cached(c, key, [&] {
        PhiTable phi(c.q_max + 1);
        EEngine E(S, phi, c.q_max);
        QSeries br = ehilb_bracket(E, FockVector(mu), FockVector(nu));
        Json v{{"model", c.model}, {"mu", mu.str(S)}, {"nu", nu.str(S)}, {"q_max", c.q_max}, {"series", to_json(br)}};
        if (fit) {
            bool known = false;
            int wt = predicted_weight(S, mu, nu, known);
            int index2 = 2 * (mu.energy() - 1);
            int wmax = known ? wt : 6;
            auto f = qjac_fit((br * eta_and_delta(c.q_max + 1).second).truncated(c.q_max), wmax, index2, c.w_order);
            Json terms = Json::array();
            for (const auto& [m, coef] : f.terms) terms.push_back({{"monomial", m.str()}, {"weight", m.weight()}, {"coeff", to_json(coef)}});
            const char* status = f.status == QJacFit::Status::ok                  ? "ok"
                                 : f.status == QJacFit::Status::underdetermined ? "underdetermined"
                                                                                : "no_representation";
            v["fit"] = {{"target", "bracket * Delta"},
                        {"index", rat(index2, 2).get_str()},
                        {"predicted_weight", known ? Json(wt) : Json(nullptr)},
                        {"weight_max", wmax},
                        {"status", status},
                        {"holomorphic", f.holomorphic},
                        {"unknowns", f.unknowns},
                        {"fitted_through", f.fitted_through},
                        {"verified_through", f.verified_through},
                        {"terms", terms},
                        {"message", f.message}};
        }
        return v;
    });
    if (c.format == "pretty" && value.contains("fit")) {
        Json plain = value;
        plain.erase("fit");
        emit_series(c, plain);
        const Json& f = value.at("fit");
        std::cout << "fit (" << f.at("target").get<std::string>() << ", index " << f.at("index").get<std::string>()
                  << "): " << f.at("status").get<std::string>() << ", holomorphic " << f.at("holomorphic") << "\n";
        for (const auto& t : f.at("terms"))
            std::cout << "  " << gq_from_json(t.at("coeff")).str() << " * " << t.at("monomial").get<std::string>()
                      << "   [weight " << t.at("weight") << "]\n";
        return 0;
    }
    emit_series(c, value);
    return 0;
}

int cmd_verify(const Config& c, const std::vector<std::string>& names, bool long_run, std::optional<int> h_max) {
    std::vector<const Suite*> chosen;
    for (const auto& n : names) {
        bool found = false;
        for (const auto& s : suites())
            if (n == "all" || n == s.key || n == std::to_string(s.id)) {
                if (std::find(chosen.begin(), chosen.end(), &s) == chosen.end()) chosen.push_back(&s);
                found = true;
            }
        if (!found) {
            std::string all = " all";
            for (const auto& s : suites()) all += " " + s.key;
            throw UsageError("unknown suite '" + n + "' (valid:" + all + ")");
        }
    }
    std::sort(chosen.begin(), chosen.end(), [](const Suite* a, const Suite* b) { return a->id < b->id; });
    SuiteOptions opt;
    opt.conj_mode = c.mode;
    opt.conj_d3 = long_run;
    opt.genus1_lattice = long_run;
    opt.h_max = h_max.value_or(long_run ? 15 : 10);
    if (opt.h_max < 2 || opt.h_max > 15) throw UsageError("--hmax must be in 2..15");
    int failed = 0;
    Json out = Json::array();
    // timings only appear in the pretty format, so json and csv output stay reproducible
    if (c.format == "csv") std::cout << "id,suite,result,detail\n";
    for (const Suite* s : chosen) {
        auto r = run_suite(*s, opt);
        if (!r.pass) ++failed;
        if (c.format == "pretty") {
            std::cout << format_result(r) << std::endl;
        } else if (c.format == "csv") {
            std::string d = r.detail;
            for (auto& ch : d)
                if (ch == '"') ch = '\'';
            std::cout << r.id << "," << r.key << "," << (r.pass ? "PASS" : "FAIL") << ",\"" << d
                      << "\"" << std::endl;
        } else {
            out.push_back({{"id", r.id}, {"suite", r.key}, {"title", r.title}, {"pass", r.pass},
                           {"budget_seconds", r.budget}, {"detail", r.detail}});
        }
    }
    if (c.format == "json") std::cout << Json{{"results", out}, {"failed", failed}}.dump(2) << "\n";
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gromov-Witten series of K3 and Hilb^d(K3): expansions, solvers, brackets, checks"};
    app.set_version_flag("--version", K3GW_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<int> qmax, worder, kwindow, hmax, d_opt;
    std::optional<std::string> model, mode, format, cache_dir, config;
    bool fit = false, long_run = false;
    app.add_option("--qmax", qmax, "highest q-power (default 5)");
    app.add_option("--worder", worder, "w-order for holomorphy tests (default 8)");
    app.add_option("--model", model, "surface model: k3-rank24 k3-rank24-orth mini");
    app.add_option("--mode", mode, "operator WDVV mode: full | sampled");
    app.add_option("--format", format, "json | csv | pretty");
    app.add_option("--cache-dir", cache_dir, "cache directory (off when unset)");
    app.add_option("--config", config, "JSON config file (default $K3GW_CONFIG)");

    std::string name;
    auto* expand = app.add_subcommand("expand", "expand a generator or closed-form series");
    expand->add_option("name", name, "generator or series name")->required();
    expand->add_option("--d", d_opt, "Hilbert scheme degree for mthm0..mthm3 and extra (default 2)");

    std::string wsub;
    auto* wdvv = app.add_subcommand("wdvv", "solve or verify the WDVV recursion");
    wdvv->add_option("action", wsub, "solve | verify")->required()->check(CLI::IsMember({"solve", "verify"}));
    wdvv->add_option("--kwindow", kwindow, "y-window of row 0 (default 2 qmax + 2)");

    std::string mu_text, nu_text;
    auto* bracket = app.add_subcommand("bracket", "<mu | E^Hilb | nu> for two Nakajima monomials");
    bracket->add_option("mu", mu_text, "e.g. \"p(-2,w) 1\"")->required();
    bracket->add_option("nu", nu_text, "e.g. \"p(-1,F) p(-1,e) 1\"")->required();
    bracket->add_flag("--fit", fit, "fit bracket * Delta by a quasi-Jacobi form");

    std::vector<std::string> suite_names;
    auto* verify = app.add_subcommand("verify", "run acceptance suites");
    verify->add_option("suite", suite_names, "all | yz theta closure wdvv phi conjA hilb2 examples genus1 table1 a1 qjac")
        ->required();
    verify->add_flag("--long", long_run, "include the long checks");
    verify->add_option("--hmax", hmax, "hyperelliptic window (default 10, 15 with --long)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Config c;
        std::string cfg = config.value_or(std::getenv("K3GW_CONFIG") ? std::getenv("K3GW_CONFIG") : "");
        if (!cfg.empty()) load_config_file(c, cfg);
        load_env(c);
        if (qmax) c.q_max = *qmax;
        if (worder) c.w_order = *worder;
        if (model) c.model = *model;
        if (mode) c.mode = *mode;
        if (format) c.format = *format;
        if (cache_dir) c.cache_dir = *cache_dir;
        validate(c);

        if (*expand) return cmd_expand(c, name, d_opt.value_or(2));
        if (*wdvv) return cmd_wdvv(c, wsub, kwindow);
        if (*bracket) return cmd_bracket(c, mu_text, nu_text, fit);
        if (*verify) return cmd_verify(c, suite_names, long_run, hmax);
    } catch (const UsageError& e) {
        std::cerr << "k3gw: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "k3gw: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
