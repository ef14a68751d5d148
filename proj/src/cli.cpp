#include "isys/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "isys/error.hpp"
#include "isys/formats.hpp"
#include "isys/oracle.hpp"
#include "isys/reduce_linear.hpp"
#include "isys/reduce_star.hpp"
#include "isys/semantics.hpp"
#include "isys/topology.hpp"
#include "isys/turing.hpp"

namespace isys {

using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Options {
    std::string input_path;
    std::string output_path;
    bool deterministic = false;
    unsigned workers = 0;

    std::string target;
    std::size_t max_states = ExploreOptions{}.max_states;
    bool trace = false;

    std::string dot_path;
    std::string word;
    std::uint64_t max_steps = 0;
    bool halt_extension = false;
    std::size_t guard = kBruteForceGuard;
    GenParams gen;
};

class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    void emit(const std::string& text) {
        if (o_.output_path.empty()) out_ << text;
        else write_file(o_.output_path, text);
    }

    ExploreOptions explore_options() const {
        ExploreOptions e;
        e.max_states = o_.max_states;
        if (o_.deterministic) e.workers = 1;
        else if (o_.workers != 0) e.workers = o_.workers;
        else e.workers = std::max(1u, std::thread::hardware_concurrency());
        return e;
    }

    int validate() {
        const auto sys = parse_system_unchecked(read_input(o_.input_path));
        const auto report = validate_system(sys);
        json findings = json::array();
        for (const auto& f : report.findings) findings.push_back(json{{"rule", f.rule}, {"element", f.element}});
        emit(dump(json{{"ok", report.ok()}, {"findings", findings}}));
        err_ << (report.ok() ? "valid" : "invalid: " + report.summary()) << "\n";
        return report.ok() ? 0 : 2;
    }

    int classify_cmd() {
        const auto sys = parse_system(read_input(o_.input_path));
        const auto g = interaction_graph(sys.model);
        const auto cls = classify(g);
        json edges = json::array();
        for (auto [a, b] : g.edges) edges.push_back(json::array({g.nodes[a], g.nodes[b]}));
        emit(dump(json{{"star_like", cls.star_like}, {"linear", cls.linear}, {"nodes", g.nodes}, {"edges", edges}}));
        if (!o_.dot_path.empty()) write_file(o_.dot_path, export_dot(g));
        err_ << g.nodes.size() << " components, " << g.edges.size() << " edges; star_like=" << cls.star_like
             << " linear=" << cls.linear << "\n";
        return 0;
    }

    int reach() {
        const auto sys = parse_system(read_input(o_.input_path));
        std::vector<StatePredicate> targets;
        if (std::filesystem::is_regular_file(o_.target)) targets = parse_predicate_document(sys, read_input(o_.target));
        else targets.push_back(parse_inline_predicate(sys, o_.target));
        const auto r = is_reachable(sys, targets, explore_options());
        json doc{{"reachable", r.reachable}, {"complete", r.complete}, {"states_explored", r.states_explored},
                 {"transitions_explored", r.transitions_explored}};
        if (o_.trace) {
            json path = json::array();
            for (const auto& q : r.path) path.push_back(state_names(sys, q));
            doc["trace"] = r.trace;
            doc["path"] = std::move(path);
        }
        emit(dump(doc));
        err_ << (r.reachable ? "reachable" : r.complete ? "unreachable (exhaustive)" : "not found (truncated)");
        if (r.reachable) err_ << " in " << r.trace.size() << " steps";
        err_ << "; " << r.states_explored << " states explored\n";
        return 0;
    }

    int tm_run() {
        const auto m = parse_dtm(read_input(o_.input_path));
        const auto x = parse_word(o_.word);
        const auto r = run_tm(m, x, o_.max_steps == 0 ? std::nullopt : std::optional<std::uint64_t>(o_.max_steps));
        json last{{"state", r.last.state}, {"tape", r.last.tape}, {"head", r.last.head}};
        emit(dump(json{{"outcome", to_string(r.outcome)}, {"steps", r.steps}, {"last", last}}));
        err_ << to_string(r.outcome) << " after " << r.steps << " steps\n";
        return 0;
    }

    int tm_compile() {
        const auto m = parse_dtm(read_input(o_.input_path));
        const auto x = parse_word(o_.word);
        auto sys = compile_lsa(m, x);
        if (o_.halt_extension) {
            auto ext = extend_halt_propagation(m, sys);
            err_ << "target: " << format_predicate(ext.system, ext.target) << "\n";
            sys = std::move(ext.system);
        }
        emit(serialize_system(sys));
        err_ << sys.component_count() << " components, " << sys.model.interactions.size() << " interactions\n";
        return 0;
    }

    int starify_cmd() {
        const auto sys = parse_system(read_input(o_.input_path));
        const auto star = starify(sys);
        emit(serialize_system(star));
        err_ << star.component_count() << " components, " << star.model.interactions.size() << " interactions\n";
        return 0;
    }

    int check_thm1() {
        const auto m = parse_dtm(read_input(o_.input_path));
        const auto x = parse_word(o_.word);
        const auto c = check_theorem1(m, x);
        emit(dump(json{{"verdict", to_string(c.verdict)},
                       {"machine", to_string(c.machine)},
                       {"reachable", c.reachable},
                       {"complete", c.search_complete},
                       {"lockstep", c.lockstep_ok},
                       {"lockstep_steps", c.lockstep_steps},
                       {"states_explored", c.states_explored}}));
        err_ << to_string(c.verdict) << ": " << c.details << "\n";
        return c.verdict == Verdict::Disagree ? 1 : 0;
    }

    int check_thm2() {
        const auto sys = parse_system(read_input(o_.input_path));
        const auto c = check_theorem2(sys, o_.guard);
        emit(dump(json{{"verdict", to_string(c.verdict)},
                       {"original_states", c.original_states},
                       {"star_states", c.star_states},
                       {"projected_states", c.projected_states}}));
        err_ << to_string(c.verdict) << ": " << c.details << "\n";
        return c.verdict == Verdict::Disagree ? 1 : 0;
    }

    int gen_random() {
        const auto sys = gen_random_system(o_.gen);
        emit(serialize_system(sys));
        err_ << sys.component_count() << " components, " << sys.model.interactions.size() << " interactions\n";
        return 0;
    }

private:
    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Interaction system reachability toolkit"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("-o,--output", o.output_path, "Write the result document to a file");
    app.add_flag("--deterministic", o.deterministic, "Force sequential exploration");
    app.add_option("--workers", o.workers, "Exploration worker threads (0 = all cores)");

    auto system_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("system", o.input_path, "System document")->required();
        return sub;
    };
    auto dtm_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("dtm", o.input_path, "Machine document")->required();
        sub->add_option("--input", o.word, "Input word")->required();
        return sub;
    };

    auto* validate = system_cmd("validate", "Check a system document");
    auto* classify_sub = system_cmd("classify", "Classify the interaction graph");
    classify_sub->add_option("--dot", o.dot_path, "Write the graph in DOT format");
    auto* reach = system_cmd("reach", "Decide reachability of a target predicate");
    reach->add_option("--target", o.target, "Predicate document or inline comp=state list")->required();
    reach->add_option("--max-states", o.max_states, "Exploration state limit");
    reach->add_flag("--trace", o.trace, "Include the witness");
    auto* tm_run = dtm_cmd("tm-run", "Run a machine directly");
    tm_run->add_option("--max-steps", o.max_steps, "Step limit (0 = default bound)");
    auto* tm_compile = dtm_cmd("tm-compile", "Compile a machine run into a linear system");
    tm_compile->add_flag("--halt-extension", o.halt_extension, "Add halt propagation to a single target state");
    auto* starify_sub = system_cmd("starify", "Rewrite a system into star form");
    auto* thm1 = dtm_cmd("check-thm1", "Compare a machine run with reachability in its compiled system");
    auto* thm2 = system_cmd("check-thm2", "Compare reachable sets of a system and its star form");
    thm2->add_option("--guard", o.guard, "Product state limit for enumeration");
    auto* gen = app.add_subcommand("gen-random", "Generate a seeded random system");
    gen->add_option("--seed", o.gen.seed, "Seed")->required();
    gen->add_option("--components", o.gen.max_components, "Maximum components");
    gen->add_option("--states", o.gen.max_states, "Maximum states per component");
    gen->add_option("--ports", o.gen.max_ports, "Maximum ports per component");
    gen->add_option("--interactions", o.gen.max_interactions, "Maximum interactions");
    gen->add_option("--interaction-size", o.gen.max_interaction_size, "Maximum ports per interaction");

    std::vector<std::string> storage{"isys"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Runner run(o, out, err);
    try {
        if (*validate) return run.validate();
        if (*classify_sub) return run.classify_cmd();
        if (*reach) return run.reach();
        if (*tm_run) return run.tm_run();
        if (*tm_compile) return run.tm_compile();
        if (*starify_sub) return run.starify_cmd();
        if (*thm1) return run.check_thm1();
        if (*thm2) return run.check_thm2();
        if (*gen) return run.gen_random();
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace isys
