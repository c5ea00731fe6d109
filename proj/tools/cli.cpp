#include "cli.hpp"

#include "commands.hpp"

#include "polycurve/errors.hpp"
#include "polycurve/poly_text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

namespace polycurve::cli {

namespace {

using Handler = std::function<Outcome(const json&, const Config&)>;

struct Subcommand {
    const char* name;
    const char* help;
    Handler handler;
    std::vector<const char*> flags;  // each becomes --flag and a record field of the same name
    const char* positional = nullptr;
};

const std::vector<Subcommand>& subcommands() {
    static const std::vector<Subcommand> s = {
        {"classify-surface", "universal cover verdict from surface invariants", classify_surface_cmd,
         {"K2", "chi", "q", "p_g", "P2", "P12", "e", "h0_omega_mk", "tensor_status", "kaehler", "claimed", "dimension",
          "tensor_present", "k_ample"}},
        {"classify-cubic", "singularities and type of a plane cubic", classify_cubic_cmd,
         {"vars", "field", "invariance_trials"}, "poly"},
        {"check-tensor", "endomorphism, splitting and blow-up of a special tensor", check_tensor_cmd,
         {"a11", "a12", "a22", "vars", "field", "base", "perm", "maps"}},
        {"cohomology", "h0 of a Sigma + b F on the Hirzebruch surface F_n", cohomology_cmd, {"n", "a", "b"}},
        {"elliptic", "canonical bundle arithmetic of elliptic fibrations", elliptic_cmd,
         {"b", "p_g", "chi", "fibers", "weierstrass"}},
        {"verify-holonomy", "residual statistics for the SU(2,2) checks", verify_holonomy_cmd, {"samples"}},
        {"fixed-point", "fixed point of a polydisk automorphism", fixed_point_cmd, {"sigma", "psi", "choice", "random"}},
    };
    return s;
}

class Printer {
public:
    Printer(std::ostream& out, bool human) : out_(out), human_(human) {}

    void emit(const json& rec) {
        if (!human_) {
            out_ << rec.dump() << '\n';
            return;
        }
        bool first = true;
        for (const auto& [k, v] : rec.items()) {
            if (!first) out_ << "  ";
            first = false;
            out_ << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
    bool human_;
};

json error_record(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

// Runs one record; returns the error record on failure. UsageError propagates.
std::pair<std::optional<Outcome>, json> guarded(const Handler& h, const json& rec, const Config& cfg) {
    try {
        return {h(rec, cfg), nullptr};
    } catch (const UsageError&) {
        throw;
    } catch (const RecordError& e) {
        json r = error_record("malformed_record", e.what());
        if (!e.field().empty()) r["error"]["field"] = e.field();
        return {std::nullopt, r};
    } catch (const ParseError& e) {
        json r = error_record("parse_error", e.what());
        r["error"]["position"] = e.position();
        return {std::nullopt, r};
    } catch (const DomainError& e) {
        return {std::nullopt, error_record(e.code(), e.what())};
    } catch (const std::exception& e) {
        return {std::nullopt, error_record("invalid_input", e.what())};
    }
}

int run_batch(const Handler& h, const std::vector<std::pair<std::size_t, std::string>>& lines, bool raw_poly,
              const Config& cfg, Printer& p) {
    std::map<std::string, std::size_t> by_verdict;
    std::size_t errors = 0, failed = 0;
    for (const auto& [lineno, text] : lines) {
        json rec;
        std::optional<Outcome> res;
        json err;
        try {
            rec = raw_poly && text.find_first_not_of(" \t") != std::string::npos && text[text.find_first_not_of(" \t")] != '{'
                      ? json{{"poly", text}}
                      : json::parse(text);
            std::tie(res, err) = guarded(h, rec, cfg);
        } catch (const json::parse_error& e) {
            err = error_record("malformed_record", e.what());
            err["error"]["position"] = e.byte;
        }
        if (res) {
            p.emit(res->record);
            ++by_verdict[res->verdict];
            failed += res->failed;
        } else {
            err["error"]["line"] = lineno;
            p.emit(err);
            ++errors;
        }
    }
    if (lines.empty()) return 0;
    json summary = {{"records", lines.size()}, {"errors", errors}, {"by_verdict", json::object()}};
    for (const auto& [v, n] : by_verdict) summary["by_verdict"][v] = n;
    p.emit({{"summary", summary}});
    return errors + failed ? 1 : 0;
}

std::optional<double> parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"polycurve: special tensors, plane cubics and uniformization checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string tol_text, mode_text, output = "json-lines";
    std::uint64_t seed = 0;
    app.add_option("--tol", tol_text, "numerical tolerance (default: $POLYCURVE_TOL or 1e-9)");
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--mode", mode_text, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--output", output, "human or json-lines")->check(CLI::IsMember({"human", "json-lines"}))->capture_default_str();

    struct Bound {
        const Subcommand* sub;
        CLI::App* app;
        std::map<std::string, std::string> values;
        std::string input, record;
    };
    std::vector<std::unique_ptr<Bound>> bound;
    for (const auto& s : subcommands()) {
        auto b = std::make_unique<Bound>();
        b->sub = &s;
        b->app = app.add_subcommand(s.name, s.help);
        if (s.positional) b->app->add_option(s.positional, b->values[s.positional], s.positional);
        for (const char* f : s.flags) b->app->add_option(std::string("--") + f, b->values[f]);
        b->app->add_option("--input", b->input, "file with one JSON record per line ('-' for stdin)");
        if (std::string(s.name) == "classify-surface")
            b->app->add_option("--record", b->record, "a JSON record, or an array of records");
        bound.push_back(std::move(b));
    }

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.empty() || a[0] == '-') {
            if (a == "--tol" || a == "--seed" || a == "--mode" || a == "--output") ++i;  // skip the value
            continue;
        }
        const bool known = std::any_of(subcommands().begin(), subcommands().end(),
                                       [&](const Subcommand& s) { return a == s.name; });
        if (!known) {
            err << "usage error: unknown subcommand '" << a << "'\n";
            return 2;
        }
        break;
    }

    std::vector<char*> argv;
    std::vector<std::string> copy = args;
    for (auto& a : copy) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    Config cfg;
    cfg.seed = seed;
    if (!mode_text.empty()) cfg.mode = mode_text == "exact" ? Mode::Exact : Mode::Float;
    if (tol_text.empty())
        if (const char* env = std::getenv("POLYCURVE_TOL")) tol_text = env;
    if (!tol_text.empty()) {
        const auto t = parse_double(tol_text);
        if (!t || !(*t > 0) || !std::isfinite(*t)) {
            err << "usage error: tolerance must be a positive number, got '" << tol_text << "'\n";
            return 2;
        }
        cfg.tol = *t;
    }
    Printer printer(out, output == "human");

    for (const auto& b : bound) {
        if (!b->app->parsed()) continue;
        const Subcommand& s = *b->sub;
        json rec = json::object();
        bool any_flag = false;
        for (const auto& [k, v] : b->values)
            if (b->app->count(k == (s.positional ? s.positional : "") ? k : "--" + k) > 0) {
                rec[k] = v;
                any_flag = true;
            }
        try {
            if (!b->input.empty()) {
                if (any_flag || !b->record.empty()) throw UsageError("--input cannot be combined with record flags");
                std::ifstream file;
                std::istream* src = &in;
                if (b->input != "-") {
                    file.open(b->input);
                    if (!file) {
                        printer.emit(error_record("unreadable_file", "cannot open '" + b->input + "'"));
                        return 1;
                    }
                    src = &file;
                }
                std::vector<std::pair<std::size_t, std::string>> lines;
                std::string line;
                for (std::size_t n = 1; std::getline(*src, line); ++n)
                    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.emplace_back(n, line);
                return run_batch(s.handler, lines, s.positional != nullptr, cfg, printer);
            }
            if (!b->record.empty()) {
                if (any_flag) throw UsageError("--record cannot be combined with field flags");
                json parsed;
                try {
                    parsed = json::parse(b->record);
                } catch (const json::parse_error& e) {
                    json r = error_record("malformed_record", e.what());
                    r["error"]["position"] = e.byte;
                    printer.emit(r);
                    return 1;
                }
                if (parsed.is_array()) {
                    std::vector<std::pair<std::size_t, std::string>> lines;
                    for (std::size_t i = 0; i < parsed.size(); ++i) lines.emplace_back(i + 1, parsed[i].dump());
                    return run_batch(s.handler, lines, false, cfg, printer);
                }
                rec = parsed;
            }
            auto [res, error] = guarded(s.handler, rec, cfg);
            if (!res) {
                if (error["error"]["code"] == "malformed_record" && error["error"]["message"].get<std::string>().rfind("missing", 0) == 0 &&
                    b->record.empty()) {
                    err << "usage error: " << error["error"]["message"].get<std::string>() << '\n';
                    return 2;
                }
                printer.emit(error);
                return 1;
            }
            printer.emit(res->record);
            return res->failed ? 1 : 0;
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << '\n';
            return 2;
        }
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace polycurve::cli
