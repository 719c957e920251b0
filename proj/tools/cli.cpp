#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "cfgame/online.hpp"
#include "cfgame/synthesis.hpp"

namespace cfgame::cli {

namespace {

constexpr const char* kFixturePrefix = "fixture:";

struct LoadedGame {
    Game game;
    std::string fixture;  // empty for games read from files
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

LoadedGame load_game_arg(const std::string& arg) {
    if (starts_with(arg, kFixturePrefix)) {
        std::string name = arg.substr(std::string(kFixturePrefix).size());
        return {fixture(name), name};
    }
    return {load_game(arg), {}};
}

// A file, or fixture:NAME for a strategy shipped with a fixture game.
StrategyAutomaton load_strategy_arg(const std::string& arg, const LoadedGame& lg) {
    if (starts_with(arg, kFixturePrefix)) {
        if (lg.fixture.empty()) throw InputError("fixture strategies need a fixture game");
        auto all = fixture_strategies(lg.fixture, lg.game);
        std::string name = arg.substr(std::string(kFixturePrefix).size());
        auto it = all.find(name);
        if (it == all.end()) throw InputError("fixture " + lg.fixture + " has no strategy '" + name + "'");
        return it->second;
    }
    return load_strategy(arg, lg.game);
}

void write_json(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::optional<std::string> opt_word(const std::optional<Word>& w, const Alphabet& ab) {
    if (!w) return std::nullopt;
    return ab.format(*w);
}

std::string shown(const std::string& s) { return s.empty() ? "ε" : s; }

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

const char* order_name(Order o) {
    switch (o) {
        case Order::Less: return "less";
        case Order::Equal: return "equal";
        case Order::Greater: return "greater";
    }
    return "?";
}

struct Globals {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    bool quiet = false;
    bool json_only = false;
};

class Runner {
public:
    Runner(Streams io, Globals g) : io_(io), g_(g) {}

    // verdict line plus the JSON details, shaped by --quiet and --json
    int report(int code, const std::string& verdict, json details) {
        if (g_.quiet) return code;
        if (g_.json_only) {
            details["verdict"] = verdict;
            io_.out << details.dump() << "\n";
        } else {
            io_.out << verdict << "\n" << details.dump() << "\n";
        }
        return code;
    }

    Streams& io() { return io_; }
    const Globals& globals() const { return g_; }

private:
    Streams io_;
    Globals g_;
};

// ---- subcommands --------------------------------------------------------------------

int cmd_validate(Runner& r, const std::string& file, const std::string& strategy, bool online) {
    if (online) {
        OnlineInstance inst = load_online_instance(read_json_file(file));
        json d{{"states", inst.nfa.num_states()}, {"symbols", inst.alphabet.names()}};
        return r.report(Affirmative, "valid online instance", d);
    }
    LoadedGame lg = load_game_arg(file);
    const Game& g = lg.game;
    json fs = json::array();
    for (Symbol a : g.function_symbols()) fs.push_back(g.alphabet().name(a));
    json d{{"symbols", g.alphabet().names()},
           {"function_symbols", fs},
           {"target_states", g.target().num_states()},
           {"notices", g.notices()}};
    if (!strategy.empty()) {
        StrategyAutomaton s = load_strategy_arg(strategy, lg);
        d["strategy"] = {{"kind", kind_name(s.kind())}, {"states", s.num_states()}};
    }
    return r.report(Affirmative, strategy.empty() ? "valid game" : "valid game and strategy", d);
}

int cmd_classify(Runner& r, const std::string& file) {
    LoadedGame lg = load_game_arg(file);
    Classification c = classify(lg.game);
    std::string v;
    v += c.prefix_free ? "prefix-free" : "not prefix-free";
    v += c.non_recursive ? ", non-recursive" : ", recursive";
    if (c.unary) v += ", unary";
    if (c.finite_rules) v += ", finite rules";
    if (c.finite_target) v += ", finite target";
    return r.report(Affirmative, v, classification_json(c, lg.game.alphabet()));
}

int cmd_transform(Runner& r, const std::string& file, bool prefix_free, const std::string& end, const std::string& out) {
    if (!prefix_free) throw InputError("transform needs --prefix-free");
    Game t = to_prefix_free(load_game_arg(file).game, end);
    json j = game_to_json(t);
    if (out.empty()) {
        r.io().out << j.dump(2) << "\n";
        return Affirmative;
    }
    write_json(out, j);
    return r.report(Affirmative, "wrote " + out, {{"out", out}, {"symbols", t.alphabet().names()}});
}

json play_json(const Game& g, const Play& p) {
    const Alphabet& ab = g.alphabet();
    json steps = json::array();
    for (auto& s : p.steps) {
        json st{{"move", s.move == MoveKind::Call ? "call" : "read"}, {"symbol", ab.name(s.symbol)}, {"depth", s.depth}};
        if (s.move == MoveKind::Call) st["reply"] = ab.format(s.reply);
        steps.push_back(st);
    }
    return {{"word", ab.format(p.input)},
            {"outcome", outcome_name(p.outcome)},
            {"final_string", ab.format(p.final_string)},
            {"depth", p.depth},
            {"steps", steps}};
}

int outcome_code(Outcome o) {
    switch (o) {
        case Outcome::WinJuliet: return Affirmative;
        case Outcome::WinRomeo: return Negative;
        case Outcome::Truncated: return OutOfScope;
    }
    return OutOfScope;
}

// Romeo is the person at the terminal. The configuration mirror replays the
// history so the prompt can show the remaining word.
RomeoStrategy interactive_romeo(const Game& g, const Word& input, Streams& io) {
    struct Mirror {
        Word remaining;
        std::size_t seen = 0;
        std::vector<Word> replies;
    };
    auto m = std::make_shared<Mirror>(Mirror{input, 0, {}});
    const Game* gp = &g;
    return [m, gp, &io](const History& h, Symbol a) {
        const Game& game = *gp;
        const Alphabet& ab = game.alphabet();
        std::size_t k = game.num_symbols();
        std::size_t reply_no = 0;
        for (std::size_t i = 0; i < m->seen; ++i)
            if (is_hat(h[i], k)) ++reply_no;
        for (; m->seen < h.size(); ++m->seen) {
            m->remaining.erase(m->remaining.begin());
            if (is_hat(h[m->seen], k)) {
                const Word& x = m->replies[reply_no++];
                m->remaining.insert(m->remaining.begin(), x.begin(), x.end());
            }
        }
        Word plain;
        for (Symbol x : h)
            if (!is_hat(x, k)) plain.push_back(x);
        int q = game.target().run(plain);
        for (;;) {
            io.out << "history: " << shown(format_history(h, ab)) << "\n"
                   << "remaining: " << shown(ab.format(m->remaining)) << "\n"
                   << "target state: " << q << "\n"
                   << "Juliet calls " << ab.name(a) << "; reply with a word of its rule: " << std::flush;
            std::string line;
            if (!std::getline(io.in, line)) throw InputError("input ended during interactive play");
            try {
                Word x = ab.parse(line);
                if (game.rule(a).dfa.accepts(x)) {
                    m->replies.push_back(x);
                    return x;
                }
                io.out << "'" << line << "' is not in the rule of " << ab.name(a) << ", try again\n";
            } catch (const InputError& e) {
                io.out << e.what() << ", try again\n";
            }
        }
    };
}

int cmd_play(Runner& r, const std::string& file, const std::string& strategy, const std::optional<std::string>& word,
             bool interactive, const std::vector<std::string>& replies) {
    LoadedGame lg = load_game_arg(file);
    const Game& g = lg.game;
    StrategyAutomaton s = load_strategy_arg(strategy, lg);
    Word w;
    if (word) {
        w = g.alphabet().parse(*word);
    } else if (interactive) {
        r.io().out << "word: " << std::flush;
        std::string line;
        if (!std::getline(r.io().in, line)) throw InputError("no word given");
        w = g.alphabet().parse(line);
    } else {
        throw InputError("play needs --word or --interactive");
    }
    RomeoStrategy romeo;
    if (interactive) {
        romeo = interactive_romeo(g, w, r.io());
    } else if (!replies.empty()) {
        std::vector<Word> xs;
        for (auto& x : replies) xs.push_back(g.alphabet().parse(x));
        romeo = romeo_scripted(xs);
    } else {
        romeo = romeo_shortlex(g);
    }
    Play p = run_play(g, s, romeo, w);
    if (interactive && !r.globals().quiet) {
        r.io().out << "\nmoves:\n";
        for (auto& c : p.configurations())
            r.io().out << "  " << shown(format_history(c.history, g.alphabet())) << " | "
                       << shown(g.alphabet().format(c.remaining)) << "\n";
    }
    return r.report(outcome_code(p.outcome), std::string(outcome_name(p.outcome)) + " on " + g.alphabet().format(w),
                    play_json(g, p));
}

int cmd_is_winning(Runner& r, const std::string& file, const std::string& strategy, const std::string& word) {
    LoadedGame lg = load_game_arg(file);
    StrategyAutomaton s = load_strategy_arg(strategy, lg);
    Word w = lg.game.alphabet().parse(word);
    bool win = is_winning(lg.game, s, w);
    std::string shown = lg.game.alphabet().format(w);
    return r.report(win ? Affirmative : Negative, std::string(win ? "winning on " : "not winning on ") + shown,
                    {{"word", shown}, {"winning", win}});
}

int cmd_exists_winning(Runner& r, const std::string& file, const std::string& word, const std::string& mode,
                       bool sequential) {
    LoadedGame lg = load_game_arg(file);
    const Game& g = lg.game;
    SearchOptions opt;
    if (mode == "lazy") opt.mode = SearchMode::Lazy;
    else if (mode == "incremental") opt.mode = SearchMode::Incremental;
    else if (mode == "exhaustive") opt.mode = SearchMode::Exhaustive;
    else throw InputError("unknown search mode '" + mode + "'");
    if (r.globals().budget) opt.budget = *r.globals().budget;
    opt.parallel = !sequential;
    opt.cancelled = r.io().interrupted;
    Word w = g.alphabet().parse(word);
    SearchResult res = exists_winning_sreg(g, w, opt);
    json d{{"word", g.alphabet().format(w)}, {"candidates", res.candidates}, {"incomplete", res.incomplete}};
    if (res.spec) {
        d["exists"] = true;
        d["strategy"] = spec_to_json(*res.spec, g);
        return r.report(Affirmative, "a winning strongly regular strategy exists", d);
    }
    if (res.incomplete) {
        d["exists"] = nullptr;
        return r.report(OutOfScope, "search interrupted before a strategy was found", d);
    }
    d["exists"] = false;
    return r.report(Negative, "no strongly regular strategy wins", d);
}

int cmd_compare(Runner& r, const std::string& file, const std::string& a, const std::string& b) {
    LoadedGame lg = load_game_arg(file);
    const Alphabet& ab = lg.game.alphabet();
    ComparisonResult c = compare_strategies(lg.game, load_strategy_arg(a, lg), load_strategy_arg(b, lg));
    json d{{"relation", relation_name(c.relation)},
           {"only_first", nullable(opt_word(c.only_first, ab))},
           {"only_second", nullable(opt_word(c.only_second, ab))},
           {"shortlex", order_name(c.shortlex)}};
    switch (c.relation) {
        case SetRelation::Equal:
        case SetRelation::Subset: return r.report(Affirmative, a + " ⊆ " + b, d);
        case SetRelation::Superset: return r.report(Negative, a + " ⊋ " + b, d);
        case SetRelation::Incomparable: return r.report(Negative, a + " and " + b + " are incomparable", d);
    }
    return Negative;
}

int cmd_synthesize(Runner& r, const std::string& file, const std::string& out, const std::string& dot, std::size_t cap,
                   bool verify) {
    LoadedGame lg = load_game_arg(file);
    const Game& g = lg.game;
    SynthesisOptions opt;
    opt.cap = cap;
    opt.verify = verify;
    SynthesisResult res = synthesize_weakly_dominant(g, opt);
    std::size_t non_trivial = 0;
    for (auto& t : res.effects.triples())
        if (!res.effects.is_trivial(t)) ++non_trivial;
    json sj = strategy_to_json(res.strategy, g);
    if (!out.empty()) write_json(out, sj);
    if (!dot.empty()) write_text_file(dot, to_dot(res.strategy.dfa(), history_labels(g.alphabet()), "strategy"));
    json d{{"strategy_states", res.strategy.num_states()},
           {"triples", res.effects.size()},
           {"non_trivial_triples", non_trivial},
           {"ne_states", res.ne.instance.nfa.num_states()},
           {"transitions_removed", res.pruned.removed}};
    if (out.empty()) d["strategy"] = sj;
    return r.report(Affirmative, "synthesized a strategy with " + std::to_string(res.strategy.num_states()) + " states",
                    d);
}

int cmd_online_prune(Runner& r, const std::string& file, const std::string& dot, std::optional<std::size_t> bound,
                     const std::string& out) {
    OnlineInstance inst = load_online_instance(read_json_file(file));
    PruneResult p = prune_weakly_dominant(inst);
    OnlineInstance pruned{inst.alphabet, p.pruned};
    json d{{"removed", p.removed},
           {"levels", p.levels},
           {"pruned", online_instance_to_json(pruned)},
           {"strategy", dfa_to_json(p.strategy, inst.alphabet)},
           {"nondeterministic_implies_universal", nondeterministic_implies_universal(p.pruned)}};
    if (!dot.empty()) write_text_file(dot, to_dot(p.pruned, inst.alphabet.names(), "pruned"));
    if (!out.empty()) write_json(out, online_instance_to_json(pruned));
    int code = Affirmative;
    std::string v = "removed " + std::to_string(p.removed) + " transitions";
    if (bound) {
        BoundedDiagnosis diag = diagnose_bounded(inst, *bound);
        auto triples = [&](const std::vector<std::tuple<int, Symbol, int>>& ts) {
            json a = json::array();
            for (auto [q, s, t] : ts) a.push_back({q, inst.alphabet.name(s), t});
            return a;
        };
        d["diagnosis"] = {{"bound", diag.bound},
                          {"agrees", diag.agrees()},
                          {"only_replayed", triples(diag.only_replayed)},
                          {"only_main", triples(diag.only_main)}};
        if (!diag.agrees()) code = Negative;
        v += diag.agrees() ? "; bounded replay agrees" : "; bounded replay disagrees";
    }
    return r.report(code, v, d);
}

int cmd_losing_nfa(Runner& r, const std::string& file, const std::string& strategy, const std::string& dot,
                   const std::string& out) {
    LoadedGame lg = load_game_arg(file);
    const Alphabet& ab = lg.game.alphabet();
    Nfa n = losing_nfa(lg.game, load_strategy_arg(strategy, lg));
    if (!dot.empty()) write_text_file(dot, to_dot(n, ab.names(), "losing"));
    json nj = nfa_to_json(n, ab);
    if (!out.empty()) write_json(out, nj);
    Dfa d = determinize_minimize(n);
    json det{{"states", n.num_states()}, {"empty", is_empty(d)}, {"shortest", nullable(opt_word(shortest_word(d), ab))}};
    if (out.empty()) det["nfa"] = nj;
    return r.report(Affirmative, "losing NFA with " + std::to_string(n.num_states()) + " states", det);
}

std::string prepare_dir(const std::string& out) {
    if (out.empty()) throw InputError("generate needs --out");
    std::filesystem::create_directories(out);
    return out;
}

int cmd_generate_3sat(Runner& r, const std::string& clauses, const std::string& out) {
    Cnf f = parse_cnf(clauses);
    SatInstance inst = from_3sat(f);
    std::string dir = prepare_dir(out);
    write_json(dir + "/game.json", game_to_json(inst.game));
    std::string word = inst.game.alphabet().format(inst.word);
    write_json(dir + "/instance.json", {{"clauses", cnf_to_string(f)}, {"word", word}});
    return r.report(Affirmative, "wrote " + dir,
                    {{"game", dir + "/game.json"}, {"word", word}, {"target_states", inst.game.target().num_states()}});
}

int cmd_generate_universality(Runner& r, const std::string& nfa_file, const std::string& out) {
    Alphabet bits({"0", "1"});
    Nfa n = nfa_from_json(read_json_file(nfa_file), bits);
    UniversalityInstance inst = from_nfa_universality(n);
    std::string dir = prepare_dir(out);
    write_json(dir + "/game.json", game_to_json(inst.game));
    write_json(dir + "/first.json", spec_to_json(inst.first, inst.game));
    write_json(dir + "/second.json", spec_to_json(inst.second, inst.game));
    return r.report(Affirmative, "wrote " + dir,
                    {{"game", dir + "/game.json"},
                     {"first", dir + "/first.json"},
                     {"second", dir + "/second.json"},
                     {"fixed_negative", inst.fixed_negative}});
}

int cmd_generate_random(Runner& r, const std::string& params, const std::string& out) {
    RandomGameParams p = parse_random_params(params);
    Game g = random_game(p, r.globals().seed);
    json j = game_to_json(g);
    if (out.empty()) {
        r.io().out << j.dump(2) << "\n";
        return Affirmative;
    }
    std::string dir = prepare_dir(out);
    write_json(dir + "/game.json", j);
    return r.report(Affirmative, "wrote " + dir, {{"game", dir + "/game.json"}, {"seed", r.globals().seed}});
}

int cmd_export(Runner& r, const std::string& file, const std::string& strategy, bool online, const std::string& dot,
               const std::string& out) {
    json j;
    std::string text;
    if (online) {
        OnlineInstance inst = load_online_instance(read_json_file(file));
        j = online_instance_to_json(inst);
        text = to_dot(inst.nfa, inst.alphabet.names(), "online");
    } else {
        LoadedGame lg = load_game_arg(file);
        if (strategy.empty()) {
            j = game_to_json(lg.game);
            text = to_dot(lg.game.target(), lg.game.alphabet().names(), "target");
        } else {
            StrategyAutomaton s = load_strategy_arg(strategy, lg);
            j = strategy_to_json(s, lg.game);
            text = to_dot(s.dfa(), history_labels(lg.game.alphabet()), "strategy");
        }
    }
    if (!dot.empty()) write_text_file(dot, text);
    if (!out.empty()) write_json(out, j);
    if (dot.empty() && out.empty()) {
        r.io().out << j.dump(2) << "\n";
        return Affirmative;
    }
    return r.report(Affirmative, "exported", {{"dot", dot}, {"json", out}});
}

int error_exit(Streams& io, int code, const std::string& type, const std::string& message) {
    io.err << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
    CLI::App app{"Context-free rewriting games: analysis, synthesis and play", "cfgame"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals glob;
    std::uint64_t budget = 0;
    app.add_option("--seed", glob.seed, "seed for generators");
    auto* budget_opt = app.add_option("--budget", budget, "search budget");
    app.add_flag("--quiet", glob.quiet, "print nothing, report through the exit code");
    app.add_flag("--json", glob.json_only, "print only the JSON details");

    std::string file, strategy, word, out, dot, second, end_symbol = "$", mode = "lazy", clauses, params, nfa;
    std::optional<std::string> word_opt;
    std::vector<std::string> replies;
    bool online = false, prefix_free = false, interactive = false, sequential = false, no_verify = false;
    std::size_t cap = 10, bound = 0;

    auto* validate = app.add_subcommand("validate", "check a game file (and optionally a strategy)");
    validate->add_option("file", file, "game file or fixture:NAME")->required();
    validate->add_option("--strategy", strategy, "strategy file or fixture:NAME");
    validate->add_flag("--online", online, "the file is an online NFA instance");

    auto* classify_cmd = app.add_subcommand("classify", "report structural properties of a game");
    classify_cmd->add_option("file", file)->required();

    auto* transform = app.add_subcommand("transform", "rewrite a game");
    transform->add_flag("--prefix-free", prefix_free, "append an end marker to every rule");
    transform->add_option("--end-symbol", end_symbol, "end marker name");
    transform->add_option("file", file)->required();
    transform->add_option("--out", out, "output file (default: standard output)");

    auto* play = app.add_subcommand("play", "run one play");
    play->add_option("game", file)->required();
    play->add_option("--strategy", strategy, "Juliet's strategy")->required();
    auto* word_flag = play->add_option("--word", word_opt, "input word");
    auto* inter_flag = play->add_flag("--interactive", interactive, "Romeo's replies come from standard input");
    word_flag->excludes(inter_flag);
    play->add_option("--replies", replies, "scripted replies for Romeo (default: shortest words)");

    auto* is_win = app.add_subcommand("is-winning", "decide whether a strategy wins on a word");
    is_win->add_option("game", file)->required();
    is_win->add_option("strategy", strategy)->required();
    is_win->add_option("word", word)->required();

    auto* exists = app.add_subcommand("exists-winning", "search a winning strongly regular strategy for a word");
    exists->add_option("game", file)->required();
    exists->add_option("word", word)->required();
    exists->add_option("--mode", mode, "lazy, incremental or exhaustive");
    exists->add_flag("--sequential", sequential, "disable the parallel candidate scan");

    auto* compare = app.add_subcommand("compare", "compare the winning sets of two strategies");
    compare->add_option("game", file)->required();
    compare->add_option("first", strategy)->required();
    compare->add_option("second", second)->required();

    auto* synth = app.add_subcommand("synthesize", "build a weakly dominant strategy for a prefix-free game");
    synth->add_option("game", file)->required();
    synth->add_option("--out", out, "strategy JSON output");
    synth->add_option("--dot", dot, "strategy DOT output");
    synth->add_option("--cap", cap, "largest target accepted");
    synth->add_flag("--no-verify", no_verify, "skip replaying each admitted effect");

    auto* prune = app.add_subcommand("online-prune", "prune an online NFA to a weakly dominant strategy");
    prune->add_option("nfa", file)->required();
    prune->add_option("--dot", dot, "pruned NFA DOT output");
    prune->add_option("--out", out, "pruned NFA JSON output");
    auto* bound_opt = prune->add_option("--diagnose-bounded", bound, "replay the first levels with explicit word sets");

    auto* losing = app.add_subcommand("losing-nfa", "NFA for the words a strategy does not win");
    losing->add_option("game", file)->required();
    losing->add_option("strategy", strategy)->required();
    losing->add_option("--dot", dot, "DOT output");
    losing->add_option("--out", out, "JSON output");

    auto* generate = app.add_subcommand("generate", "write reduction and random instances");
    generate->require_subcommand(1);
    auto* gen_sat = generate->add_subcommand("3sat", "instance from a 3CNF formula");
    gen_sat->add_option("--clauses", clauses, "e.g. \"1,1,1;-1,-1,-1\"")->required();
    gen_sat->add_option("--out", out)->required();
    auto* gen_univ = generate->add_subcommand("universality", "instance from an NFA over {0,1}");
    gen_univ->add_option("--nfa", nfa)->required();
    gen_univ->add_option("--out", out)->required();
    auto* gen_rand = generate->add_subcommand("random", "random game");
    gen_rand->add_option("--params", params, "e.g. alphabet=3,states=4");
    gen_rand->add_option("--out", out, "output directory (default: standard output)");

    auto* exp = app.add_subcommand("export", "export a game target, a strategy or an online NFA");
    exp->add_option("file", file)->required();
    exp->add_option("--strategy", strategy, "export this strategy instead of the target");
    exp->add_flag("--online", online, "the file is an online NFA instance");
    exp->add_option("--dot", dot, "DOT output");
    exp->add_option("--json", out, "JSON output");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return Affirmative;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return Affirmative;
    } catch (const CLI::ParseError& e) {
        return error_exit(io, UsageError, "usage", e.what());
    }
    if (budget_opt->count()) glob.budget = budget;

    Runner r(io, glob);
    try {
        if (validate->parsed()) return cmd_validate(r, file, strategy, online);
        if (classify_cmd->parsed()) return cmd_classify(r, file);
        if (transform->parsed()) return cmd_transform(r, file, prefix_free, end_symbol, out);
        if (play->parsed()) return cmd_play(r, file, strategy, word_opt, interactive, replies);
        if (is_win->parsed()) return cmd_is_winning(r, file, strategy, word);
        if (exists->parsed()) return cmd_exists_winning(r, file, word, mode, sequential);
        if (compare->parsed()) return cmd_compare(r, file, strategy, second);
        if (synth->parsed()) return cmd_synthesize(r, file, out, dot, cap, !no_verify);
        if (prune->parsed())
            return cmd_online_prune(r, file, dot, bound_opt->count() ? std::optional<std::size_t>(bound) : std::nullopt,
                                    out);
        if (losing->parsed()) return cmd_losing_nfa(r, file, strategy, dot, out);
        if (gen_sat->parsed()) return cmd_generate_3sat(r, clauses, out);
        if (gen_univ->parsed()) return cmd_generate_universality(r, nfa, out);
        if (gen_rand->parsed()) return cmd_generate_random(r, params, out);
        if (exp->parsed()) return cmd_export(r, file, strategy, online, dot, out);
    } catch (const InputError& e) {
        return error_exit(io, UsageError, "input", e.what());
    } catch (const json::exception& e) {
        return error_exit(io, UsageError, "input", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return error_exit(io, UsageError, "input", e.what());
    } catch (const ProtocolError& e) {
        return error_exit(io, UsageError, "protocol", e.what());
    } catch (const BudgetExceeded& e) {
        return error_exit(io, OutOfScope, "budget", e.what());
    } catch (const ScopeError& e) {
        return error_exit(io, OutOfScope, "scope", e.what());
    }
    return error_exit(io, UsageError, "usage", "no subcommand");
}

}  // namespace cfgame::cli
