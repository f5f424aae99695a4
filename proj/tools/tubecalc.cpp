#include "tubecalc/amenability.hpp"
#include "tubecalc/annular_checks.hpp"
#include "tubecalc/betti.hpp"
#include "tubecalc/error.hpp"
#include "tubecalc/fusion.hpp"
#include "tubecalc/group.hpp"
#include "tubecalc/report.hpp"
#include "tubecalc/tube.hpp"
#include "tubecalc/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tubecalc;

namespace {

enum Exit { ok = 0, input_error = 1, verification_failure = 2, inconclusive = 3 };

// a command signals a failed identity by throwing its partial results
struct CommandFailed {
    Json results;
    std::string what;
};

struct Context {
    Json inputs = Json::array();
    Json warnings = Json::array();
    std::size_t chain_cap = 50000;
    double time_limit = 0.0;  // seconds, 0 = none
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        inputs.push_back({{"path", path}, {"fnv1a", fnv1a_hex(ss.str())}});
        return ss.str();
    }

    std::function<void()> tick() const {
        if (time_limit <= 0.0) return {};
        const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                          std::chrono::duration<double>(time_limit));
        return [deadline] {
            if (std::chrono::steady_clock::now() > deadline) throw TimeLimitExceeded();
        };
    }
};

// "K=10" / "N=8 margin=2"
std::map<std::string, long> key_values(const std::vector<std::string>& items, const std::string& flag) {
    std::map<std::string, long> out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos) throw ParseError(flag + ": expected key=value, got '" + it + "'");
        try {
            out[it.substr(0, eq)] = std::stol(it.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError(flag + ": bad number in '" + it + "'");
        }
    }
    return out;
}

unsigned parse_n(const std::string& s) {
    if (s == "inf" || s == "infinity") return 0;
    try {
        const long v = std::stol(s);
        if (v < 0) throw ParseError("negative parameter " + s);
        return static_cast<unsigned>(v);
    } catch (const std::invalid_argument&) {
        throw ParseError("expected an integer or 'inf', got '" + s + "'");
    }
}

// tlj:N | fuss-catalan:N,M | point
BettiProfile profile_spec(const std::string& spec) {
    if (spec == "point") return point_profile();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("bad profile '" + spec + "'");
    const std::string kind = spec.substr(0, colon), args = spec.substr(colon + 1);
    if (kind == "tlj") return tlj_profile(parse_n(args));
    if (kind == "fuss-catalan") {
        const auto comma = args.find(',');
        if (comma == std::string::npos) throw ParseError("fuss-catalan needs N,M");
        return fuss_catalan(parse_n(args.substr(0, comma)), parse_n(args.substr(comma + 1)));
    }
    throw ParseError("unknown profile kind '" + kind + "'");
}

struct RingSource {
    std::string file, tlj, group, group_file;
    std::size_t a_infinity = 0;
    double delta = 2.0;

    void add(CLI::App* app, bool windows) {
        app->add_option("--file", file, "fusion ring file");
        app->add_option("--tlj", tlj, "even part of TLJ at n (n >= 2)");
        app->add_option("--group", group, "built-in group: Z<n>, S3, D<n>");
        app->add_option("--group-file", group_file, "group multiplication table");
        if (windows) {
            app->add_option("--a-infinity", a_infinity, "A_infinity window size");
            app->add_option("--delta", delta, "loop value for windows")->check(CLI::PositiveNumber);
        }
    }

    FusionRing load(Context& ctx) const {
        const int given = !file.empty() + !tlj.empty() + !group.empty() + !group_file.empty() + (a_infinity > 0);
        if (given != 1) throw ParseError("give exactly one ring source");
        if (!file.empty()) return parse_fusion(ctx.read(file));
        if (!tlj.empty()) return tlj_even(static_cast<int>(parse_n(tlj)));
        if (!group.empty()) return from_group(GroupTable::builtin(group));
        if (!group_file.empty()) return from_group(GroupTable::parse(ctx.read(group_file)));
        return a_infinity_window(a_infinity, delta);
    }
};

Json run_fusion(Context& ctx, const RingSource& src, double tol) {
    const FusionRing ring = src.load(ctx);
    const auto failures = check_axioms(ring, tol);
    Json r = to_json(ring, failures);
    if (ring.truncated()) {
        ctx.warnings.push_back("truncated window: beta0 not computed");
    } else {
        r["beta0"] = to_json(beta0(ring));
    }
    if (!failures.empty()) {
        throw CommandFailed{r, failures.front().axiom + " fails"};
    }
    return r;
}

struct TubeArgs {
    std::string group, group_file, file;
    bool verify = false, corner = false, center = false, dump = false;
    int homology = -1;
};

TubeAlgebra load_tube(Context& ctx, const TubeArgs& a, std::optional<FusionRing>& ring) {
    const int given = !a.group.empty() + !a.group_file.empty() + !a.file.empty();
    if (given != 1) throw ParseError("give exactly one of --group, --group-file, --file");
    if (!a.file.empty()) return parse_tube(ctx.read(a.file));
    const GroupTable g = a.group.empty() ? GroupTable::parse(ctx.read(a.group_file)) : GroupTable::builtin(a.group);
    ring = from_group(g);
    return tube_from_group(g);
}

Json run_tube(Context& ctx, const TubeArgs& a) {
    std::optional<FusionRing> ring;
    const TubeAlgebra A = load_tube(ctx, a, ring);
    Json r;
    r["corners"] = A.corners().size();
    r["dimension"] = A.dim();
    std::optional<std::string> failure;
    if (a.verify) {
        const VerificationReport v = verify_identities(A);
        r["identities"] = to_json(v);
        if (const IdentityCheck* f = v.first_failure()) failure = f->name + " fails";
    }
    if (a.corner) {
        if (!ring) throw ParseError("--corner needs group input");
        const CornerMatch c = fusion_corner(A, *ring);
        r["corner"] = to_json(c);
        if (!c.matched && !failure) failure = "unit corner mismatch";
    }
    if (a.center) r["center_dim"] = center_dim(A);
    if (a.homology >= 0) {
        const HomologyReport h = trivial_homology(A, a.homology, ctx.chain_cap, ctx.tick());
        r["homology"] = to_json(h);
        if (!h.boundary_squares_zero && !failure) failure = "boundary does not square to zero";
    }
    if (a.dump) r["serialized"] = serialize_tube(A);
    if (failure) throw CommandFailed{r, *failure};
    return r;
}

struct TljArgs {
    std::string mode = "unshaded";
    std::vector<std::string> h1, h2;
    int h0 = -1;
    int truncated = -1;
};

Json run_homology_tlj(Context& ctx, const TljArgs& a) {
    const annular::Mode mode = a.mode == "shaded" ? annular::Mode::shaded : annular::Mode::unshaded;
    Json r;
    r["mode"] = a.mode;
    std::optional<std::string> failure;
    if (a.h0 >= 0) {
        const auto h = annular::h0_report(static_cast<unsigned>(a.h0));
        r["h0"] = to_json(h);
        if (h.homology_dim != 1) failure = "degree-0 homology is not one-dimensional";
    }
    if (!a.h1.empty()) {
        const auto kv = key_values(a.h1, "--h1");
        if (!kv.count("K") || kv.at("K") < 0) throw ParseError("--h1 needs K=<n>");
        const auto h = annular::h1_vanishing_check(static_cast<unsigned>(kv.at("K")), mode, ctx.tick());
        r["h1"] = to_json(h);
        if (!h.contained && !failure) failure = "H1 containment fails";
    }
    if (!a.h2.empty()) {
        const auto kv = key_values(a.h2, "--h2");
        if (!kv.count("N") || kv.at("N") < 0) throw ParseError("--h2 needs N=<n>");
        const long margin = kv.count("margin") ? kv.at("margin") : 2;
        if (margin < 0) throw ParseError("--h2 margin must be >= 0");
        annular::H2Options opt;
        opt.mode = mode;
        opt.chain_cap = ctx.chain_cap;
        opt.tick = ctx.tick();
        const auto h = annular::h2_vanishing_check(static_cast<unsigned>(kv.at("N")), static_cast<unsigned>(margin), opt);
        r["h2"] = to_json(h);
        if (!h.contained && !failure) failure = "H2 containment fails";
    }
    if (a.truncated >= 0) {
        r["truncated"] = to_json(annular::truncated_homology(static_cast<unsigned>(a.truncated), mode, ctx.chain_cap, ctx.tick()));
        ctx.warnings.push_back("truncated complex: top-of-window classes are not removed");
    }
    if (r.size() == 1) throw ParseError("nothing to do: give --h0, --h1, --h2 or --truncated");
    if (failure) throw CommandFailed{r, *failure};
    return r;
}

struct BettiArgs {
    std::string tlj;
    std::vector<std::string> fuss_catalan, free_product, tensor;
};

Json run_betti(Context& ctx, const BettiArgs& a) {
    const int given = !a.tlj.empty() + !a.fuss_catalan.empty() + !a.free_product.empty() + !a.tensor.empty();
    if (given != 1) throw ParseError("give exactly one of --tlj, --fuss-catalan, --free-product, --tensor");
    BettiProfile p;
    if (!a.tlj.empty()) p = tlj_profile(parse_n(a.tlj));
    else if (!a.fuss_catalan.empty()) p = fuss_catalan(parse_n(a.fuss_catalan[0]), parse_n(a.fuss_catalan[1]));
    else if (!a.free_product.empty()) p = free_product(profile_spec(a.free_product[0]), profile_spec(a.free_product[1]));
    else p = tensor_product(profile_spec(a.tensor[0]), profile_spec(a.tensor[1]));
    for (const auto& w : p.warnings) ctx.warnings.push_back(w);
    return to_json(p);
}

struct AmenArgs {
    RingSource ring;
    std::string graph_file, generator = "", strategy = "balls";
    double epsilon = 0.05, tolerance = 1e-6;
    std::size_t max_size = 200;
    bool kesten = false, folner = false;
};

Json run_amenability(Context& ctx, const AmenArgs& a) {
    if (!a.kesten && !a.folner) throw ParseError("give --kesten and/or --folner");
    Json r;
    const FolnerStrategy strategy = a.strategy == "greedy" ? FolnerStrategy::greedy : FolnerStrategy::balls;
    if (!a.graph_file.empty()) {
        if (a.kesten) throw ParseError("--kesten needs fusion data, not a graph file");
        const WeightedGraph g = parse_graph(ctx.read(a.graph_file));
        r["folner"] = to_json(folner_search(g, a.epsilon, a.max_size, strategy), g);
        return r;
    }
    const FusionRing ring = a.ring.load(ctx);
    std::size_t gen = 1;
    if (!a.generator.empty()) {
        const auto idx = ring.index_of(a.generator);
        if (!idx) throw ParseError("unknown generator " + a.generator);
        gen = *idx;
    }
    if (gen >= ring.size()) throw ParseError("ring has no generator");
    r["generator"] = ring.label(gen);
    if (a.kesten) {
        KestenReport k;
        if (ring.truncated()) {
            const double delta = a.ring.delta;
            k = kesten_check_windows([delta](std::size_t W) { return a_infinity_window(W, delta); }, gen, a.tolerance);
        } else {
            k = kesten_check(ring, gen, a.tolerance);
        }
        r["kesten"] = to_json(k);
    }
    if (a.folner) {
        std::vector<std::size_t> gens{gen};
        if (ring.dual(gen) != gen) gens.push_back(ring.dual(gen));
        const WeightedGraph g = fusion_graph(ring, gens);
        r["folner"] = to_json(folner_search(g, a.epsilon, a.max_size, strategy), g);
    }
    if (ring.truncated()) ctx.warnings.push_back("infinite family handled through windows");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tube algebra and L2-Betti toolkit for rigid tensor categories"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");
    std::string output, format = "json";
    std::optional<std::size_t> chain_cap;
    double time_limit = 0.0;
    app.add_option("-o,--output", output, "write the report here instead of stdout");
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--chain-cap", chain_cap, "largest chain dimension to build");
    app.add_option("--time-limit", time_limit, "seconds, 0 for none")->check(CLI::NonNegativeNumber);

    double tol = 1e-9;
    RingSource fusion_src;
    auto* fusion = app.add_subcommand("fusion", "load a fusion ring, check axioms, report dimensions and beta0");
    fusion_src.add(fusion, true);
    fusion->add_option("--tolerance", tol, "dimension tolerance");

    TubeArgs tube_args;
    auto* tube = app.add_subcommand("tube", "build or load a tube algebra and check its identities");
    tube->add_option("--group", tube_args.group);
    tube->add_option("--group-file", tube_args.group_file);
    tube->add_option("--file", tube_args.file, "tube algebra file");
    tube->add_flag("--verify", tube_args.verify);
    tube->add_flag("--corner", tube_args.corner, "compare the unit corner with the group ring");
    tube->add_flag("--center", tube_args.center);
    tube->add_flag("--dump", tube_args.dump, "include the serialized algebra");
    tube->add_option("--homology", tube_args.homology, "trivial homology up to this degree (<= 3)");

    TubeArgs htube_args;
    htube_args.homology = 2;
    auto* htube = app.add_subcommand("homology-tube", "trivial-coefficient homology of a tube algebra");
    htube->add_option("--group", htube_args.group);
    htube->add_option("--group-file", htube_args.group_file);
    htube->add_option("--file", htube_args.file);
    htube->add_option("--degree", htube_args.homology, "top degree (<= 3)");

    TljArgs tlj_args;
    auto* htlj = app.add_subcommand("homology-tlj", "low-degree homology checks for the circle-diagram complex");
    htlj->add_option("--mode", tlj_args.mode)->check(CLI::IsMember({"unshaded", "shaded"}));
    htlj->add_option("--h0", tlj_args.h0, "degree-1 window for H0");
    htlj->add_option("--h1", tlj_args.h1, "K=<n>")->expected(1);
    htlj->add_option("--h2", tlj_args.h2, "N=<n> [margin=<m>]")->expected(1, 2);
    htlj->add_option("--truncated", tlj_args.truncated, "ranks and homology of the T-truncation");

    BettiArgs betti_args;
    auto* betti = app.add_subcommand("betti", "closed-form L2-Betti profiles");
    betti->add_option("--tlj", betti_args.tlj, "n or inf");
    betti->add_option("--fuss-catalan", betti_args.fuss_catalan, "N M")->expected(2);
    betti->add_option("--free-product", betti_args.free_product, "SPEC SPEC (tlj:N, fuss-catalan:N,M, point)")->expected(2);
    betti->add_option("--tensor", betti_args.tensor, "SPEC SPEC")->expected(2);

    AmenArgs amen_args;
    auto* amen = app.add_subcommand("amenability", "Folner and Kesten checks on fusion graphs");
    amen_args.ring.add(amen, true);
    amen->add_option("--graph", amen_args.graph_file, "weighted graph file");
    amen->add_option("--generator", amen_args.generator, "generator label (default: label 1)");
    amen->add_option("--epsilon", amen_args.epsilon)->check(CLI::PositiveNumber);
    amen->add_option("--max-size", amen_args.max_size);
    amen->add_option("--strategy", amen_args.strategy)->check(CLI::IsMember({"balls", "greedy"}));
    amen->add_option("--tolerance", amen_args.tolerance);
    amen->add_flag("--kesten", amen_args.kesten);
    amen->add_flag("--folner", amen_args.folner);

    std::string tube_file;
    auto* verify = app.add_subcommand("verify-all", "run the full check matrix");
    verify->add_option("--tube-file", tube_file, "extra tube file to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    Context ctx;
    ctx.time_limit = time_limit;
    if (const char* env = std::getenv("TUBECALC_CHAIN_CAP")) {
        try {
            ctx.chain_cap = std::stoul(env);
        } catch (const std::exception&) {
            std::cerr << "ignoring bad TUBECALC_CHAIN_CAP\n";
        }
    }
    if (chain_cap) ctx.chain_cap = *chain_cap;

    const std::string command = app.get_subcommands().front()->get_name();
    Json report;
    report["command"] = command;
    report["version"] = kVersion;
    Json results;
    std::string status = "ok";
    Json error = nullptr;
    int code = ok;
    auto fail = [&](const char* kind, const std::string& what, const std::string& st, int c) {
        status = st;
        error = {{"kind", kind}, {"message", what}};
        code = c;
    };
    try {
        if (command == "fusion") results = run_fusion(ctx, fusion_src, tol);
        else if (command == "tube") results = run_tube(ctx, tube_args);
        else if (command == "homology-tube") results = run_tube(ctx, htube_args);
        else if (command == "homology-tlj") results = run_homology_tlj(ctx, tlj_args);
        else if (command == "betti") results = run_betti(ctx, betti_args);
        else if (command == "amenability") results = run_amenability(ctx, amen_args);
        else {
            VerifyOptions o;
            o.chain_cap = ctx.chain_cap;
            o.tick = ctx.tick();
            if (!tube_file.empty()) {
                ctx.read(tube_file);
                o.tube_file = tube_file;
            }
            const VerifyReport v = verify_all(o);
            results = v.to_json();
            results["summary"] = v.summary_lines();
            if (v.any_failed()) fail("VerificationFailure", "some criteria failed", "failed", verification_failure);
            else if (!v.all_passed()) fail("Inconclusive", "some criteria were inconclusive", "inconclusive", inconclusive);
        }
    } catch (const CommandFailed& f) {
        results = f.results;
        fail("VerificationFailure", f.what, "failed", verification_failure);
    } catch (const InvariantViolation& e) {
        fail("InvariantViolation", e.what(), "failed", verification_failure);
    } catch (const SizeLimit& e) {
        fail("SizeLimit", e.what(), "inconclusive", inconclusive);
    } catch (const TruncationInconclusive& e) {
        fail("TruncationInconclusive", e.what(), "inconclusive", inconclusive);
    } catch (const TimeLimitExceeded& e) {
        fail("TimeLimitExceeded", e.what(), "inconclusive", inconclusive);
    } catch (const NotAGroup& e) {
        fail("NotAGroup", e.what(), "input-error", input_error);
    } catch (const ParseError& e) {
        fail("ParseError", e.what(), "input-error", input_error);
    } catch (const std::exception& e) {
        fail("InputError", e.what(), "input-error", input_error);
    }

    report["inputs"] = ctx.inputs;
    report["results"] = results;
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count()}};
    report["warnings"] = ctx.warnings;
    report["status"] = status;
    report["error"] = error;

    std::string text;
    if (format == "text") {
        text = "command = " + command + "\nstatus = " + status + "\n";
        if (!error.is_null()) text += "error = " + error["kind"].get<std::string>() + ": " + error["message"].get<std::string>() + "\n";
        text += render_text(results);
    } else {
        text = report.dump(2) + "\n";
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write " << output << "\n";
            return input_error;
        }
        out << text;
    }
    return code;
}
