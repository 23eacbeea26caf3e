// abap_forge: build, extend, verify and export ABAP towers.
//
// Exit codes: 0 pass, 1 check failure, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abap/abap.hpp"

namespace {

using namespace abap;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Config {
    std::string cls;
    int depth = -1;  // per-command default
    int window = 0;
    int params = 2;
    std::uint64_t seed = 1;
    std::string format = "json";
};

int log_level() {
    const char* v = std::getenv("ABAP_FORGE_LOG");
    if (!v || !*v) return 0;
    std::string s(v);
    if (s == "debug" || s == "2") return 2;
    if (s == "info" || s == "1") return 1;
    return 0;
}

void log(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[abap_forge] " << msg << "\n";
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A file holds one structure object or an array of them.
std::vector<Structure> load(const std::string& path, const Config& cfg) {
    Json doc;
    try {
        doc = Json::parse(read_input(path));
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    std::vector<Json> items;
    if (doc.is_array()) {
        for (auto& j : doc) items.push_back(j);
    } else {
        items.push_back(doc);
    }
    std::vector<Structure> out;
    for (const auto& j : items) {
        auto s = structure_from_json(j);
        if (!cfg.cls.empty()) {
            ClassTag want;
            try {
                want = parse_class_tag(cfg.cls);
            } catch (const ConfigError& e) {
                throw InputError(e.what());
            }
            if (!(want == s.tag()))
                throw InputError(path + ": document class " + s.tag().name() + " does not match --class " + cfg.cls);
        }
        auto v = validate_class(s, s.tag());
        if (!v.ok()) throw InputError(path + ": not a " + s.tag().name() + " structure: " + v.summary());
        out.push_back(std::move(s));
    }
    return out;
}

FiniteWindow window_of(const Config& cfg, int stage) { return FiniteWindow{stage, cfg.window, cfg.params}; }

void emit(const Structure& s, const std::vector<Term>& win, const std::string& format) {
    if (format == "dot") {
        std::cout << to_dot(s, win);
    } else if (format == "summary") {
        std::cout << s.tag().name() << ": " << win.size() << " terms\n";
    } else {
        std::cout << to_json(s, win).dump(2) << "\n";
    }
}

int cmd_extend(const std::string& input, const Config& cfg) {
    auto seeds = load(input, cfg);
    int depth = cfg.depth < 0 ? 1 : cfg.depth;
    bool first = true;
    if (cfg.format == "json" && seeds.size() > 1) std::cout << "[\n";
    for (const auto& a : seeds) {
        log(1, "extending " + a.tag().name() + " seed of size " + std::to_string(a.universe().size()) +
                   " to depth " + std::to_string(depth));
        Tower t = build_tower(a, depth, window_of(cfg, depth));
        auto win = t.top_window();
        if (cfg.format == "json" && seeds.size() > 1) {
            if (!first) std::cout << ",\n";
            std::cout << to_json(t.top(), win).dump(2);
        } else {
            emit(t.top(), win, cfg.format);
        }
        first = false;
    }
    if (cfg.format == "json" && seeds.size() > 1) std::cout << "\n]\n";
    return kPass;
}

struct Report {
    Json checks = Json::array();
    bool ok = true;

    void add(const std::string& subject, const CheckResult& r) {
        ok = ok && r.passed;
        checks.push_back({{"subject", subject}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        log(2, subject + " / " + r.name + ": " + (r.passed ? "pass" : "FAIL") + " " + r.detail);
    }

    void print(const std::string& format) const {
        if (format == "json") {
            std::cout << Json{{"passed", ok}, {"checks", checks}}.dump(2) << "\n";
            return;
        }
        for (const auto& c : checks)
            std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["subject"].get<std::string>() << " "
                      << c["check"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
        std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
    }
};

std::string describe(const Structure& s, std::size_t i) {
    return s.tag().name() + "#" + std::to_string(i) + "(n=" + std::to_string(s.universe().size()) + ")";
}

void verify_abap(const std::vector<Structure>& seeds, const Config& cfg, Report& rep) {
    int depth = cfg.depth < 0 ? 2 : cfg.depth;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto& a = seeds[i];
        auto name = describe(a, i);
        log(1, "verifying " + name);
        auto e = extend(a);
        rep.add(name, check_witness_completeness(e, cfg.window, cfg.params));
        for (const auto& m : automorphisms(a)) {
            auto phi = automorphism_from_map(a, m);
            rep.add(name, check_automorphism_lift(phi, e, cfg.window, cfg.params));
            auto lifted = lift_automorphism(phi, e);
            auto sampled = check_preservation_sampled(lifted, full_window(e, cfg.window, cfg.params), 200, cfg.seed);
            rep.add(name, {"sampled lift preservation", sampled.ok(), sampled.ok() ? "seed " + std::to_string(cfg.seed)
                                                                                   : *sampled.failure});
            auto fw = check_forward(a, a, phi, Morphism::identity(a), depth, window_of(cfg, depth));
            rep.add(name, {"isomorphism lift conjugation", fw.ok, fw.ok ? "depth " + std::to_string(depth) : fw.detail});
        }
        try {
            Tower t = build_tower(a, depth, window_of(cfg, depth));
            for (int s = 1; s <= depth; ++s) {
                auto win = t.window_at(s);
                auto o = compare_to_oracle(t.stages[static_cast<std::size_t>(s)], win);
                rep.add(name, {"class preservation stage " + std::to_string(s), o.ok(),
                               o.ok() ? std::to_string(win.size()) + " terms" : o.first_mismatch});
            }
        } catch (const StageError& err) {
            rep.add(name, {"class preservation", false, err.what()});
        } catch (const ClosureCycle& err) {
            rep.add(name, {"class preservation", false, err.what()});
        }
    }
}

void verify_reduce(const std::vector<Structure>& seeds, const Config& cfg, Report& rep) {
    int depth = cfg.depth < 0 ? 2 : cfg.depth;
    auto w = window_of(cfg, depth);
    for (std::size_t i = 0; i < seeds.size(); ++i)
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            const auto& a0 = seeds[i];
            const auto& a1 = seeds[j];
            auto name = describe(a0, i) + " vs " + describe(a1, j);
            bool same_sig = a0.tag().signature() == a1.tag().signature();
            auto iso = same_sig ? isomorphic(a0, a1) : std::nullopt;
            if (iso) {
                auto alpha = Morphism::from_map(a0, a1, *iso);
                bool fw = verify_forward(a0, a1, alpha, depth, w);
                rep.add(name, {"forward reduction", fw, "isomorphic seeds"});
            }
            bool bw = verify_backward(a0, a1, depth, w);
            rep.add(name, {"fixed-set distinction", bw, iso ? "fixed sets isomorphic" : "fixed sets non-isomorphic"});
        }
}

int cmd_verify(const std::vector<std::string>& inputs, bool abap_checks, bool reduce, const Config& cfg) {
    std::vector<Structure> seeds;
    for (const auto& in : inputs) {
        auto more = load(in, cfg);
        seeds.insert(seeds.end(), more.begin(), more.end());
    }
    if (!abap_checks && !reduce) abap_checks = true;
    if (reduce && seeds.size() < 2) throw InputError("--reduce needs at least two seeds");
    Report rep;
    if (abap_checks) verify_abap(seeds, cfg, rep);
    if (reduce) verify_reduce(seeds, cfg, rep);
    rep.print(cfg.format);
    return rep.ok ? kPass : kFail;
}

int cmd_catalog(const Config& cfg, int size, bool exact) {
    if (cfg.cls.empty()) throw InputError("catalog needs --class");
    ClassTag tag;
    try {
        tag = parse_class_tag(cfg.cls);
    } catch (const ConfigError& e) {
        throw InputError(e.what());
    }
    if (size < 0 || size > 6) throw InputError("catalog size must be in [0, 6]");
    auto list = exact ? catalog_exact(tag, size) : catalog(tag, size);
    if (cfg.format == "summary") {
        std::cout << tag.name() << (exact ? " size " : " size <= ") << size << ": " << list.size() << " structures\n";
    } else if (cfg.format == "dot") {
        for (const auto& s : list) std::cout << to_dot(s, s.universe());
    } else {
        Json out = Json::array();
        for (const auto& s : list) out.push_back(to_json(s));
        std::cout << out.dump(2) << "\n";
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build, extend and verify ABAP towers"};
    app.require_subcommand(1);

    Config cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--class", cfg.cls, "class tag (e.g. linear, graph, k3-free, bounded-equiv-2)");
        sub->add_option("--depth", cfg.depth, "tower depth")->check(CLI::NonNegativeNumber);
        sub->add_option("--window", cfg.window, "chain bound w")->check(CLI::NonNegativeNumber);
        sub->add_option("--params", cfg.params, "parameter bound p")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "summary"}));
    };

    std::string extend_input;
    auto* ext = app.add_subcommand("extend", "print the top window of the tower over a seed");
    ext->add_option("input", extend_input, "structure JSON file, or - for stdin")->required();
    add_common(ext);

    std::vector<std::string> verify_inputs;
    bool abap_flag = false, reduce_flag = false;
    auto* ver = app.add_subcommand("verify", "run ABAP condition checks or reduction checks");
    ver->add_option("inputs", verify_inputs, "structure JSON files")->required();
    ver->add_flag("--abap", abap_flag, "conditions (a)-(c) and class preservation");
    ver->add_flag("--reduce", reduce_flag, "forward/backward reduction over all pairs");
    add_common(ver);

    int cat_size = 4;
    bool cat_exact = false;
    auto* cat = app.add_subcommand("catalog", "list class members up to isomorphism");
    cat->add_option("--size", cat_size, "maximum size (at most 6)");
    cat->add_flag("--exact", cat_exact, "only structures of exactly --size elements");
    add_common(cat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kInput;
    }

    try {
        if (*ext) return cmd_extend(extend_input, cfg);
        if (*ver) return cmd_verify(verify_inputs, abap_flag, reduce_flag, cfg);
        if (*cat) return cmd_catalog(cfg, cat_size, cat_exact);
    } catch (const StageError& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return kFail;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const ConfigError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
