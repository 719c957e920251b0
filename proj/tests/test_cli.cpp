#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfgame/analysis.hpp"
#include "cfgame/generators.hpp"
#include "cfgame/synthesis.hpp"
#include "cli.hpp"

using namespace cfgame;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
    json details() const {
        auto nl = out.find('\n');
        REQUIRE(nl != std::string::npos);
        return json::parse(out.substr(nl + 1));
    }
};

Result run(std::vector<std::string> args, const std::string& input = "", std::function<bool()> stop = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    cli::Streams io{in, out, err};
    if (stop) io.interrupted = stop;
    int code = cli::run(args, io);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("cfgame-cli-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

struct CwdGuard {
    fs::path old = fs::current_path();
    explicit CwdGuard(const fs::path& p) { fs::current_path(p); }
    ~CwdGuard() { fs::current_path(old); }
};

}  // namespace

TEST_CASE("is-winning on the g2c fixture strategy") {
    auto win = run({"is-winning", "fixture:g2c-undominated", "fixture:fixture", "cbc"});
    CHECK(win.code == 0);
    CHECK(win.details()["winning"] == true);
    auto lose = run({"is-winning", "fixture:g2c-undominated", "fixture:fixture", "cb"});
    CHECK(lose.code == 1);
    CHECK(lose.details()["winning"] == false);
}

TEST_CASE("compare A A reports A ⊆ A") {
    fs::path dir = scratch("compare");
    Game g = fixture("sandbox");
    write(dir / "game.json", game_to_json(g));
    write(dir / "A", strategy_to_json(fixture_strategies("sandbox", g).at("read-all"), g));
    CwdGuard cwd(dir);
    auto r = run({"compare", "game.json", "A", "A"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "A ⊆ A");
}

TEST_CASE("compare output matches the library") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    auto r = run({"compare", "fixture:sandbox", "fixture:call-initial-a", "fixture:read-all"});
    auto c = compare_strategies(g, st.at("call-initial-a"), st.at("read-all"));
    json d = r.details();
    CHECK(r.code == 1);
    CHECK(d["relation"] == relation_name(c.relation));
    CHECK(d["only_first"] == g.alphabet().format(*c.only_first));
    CHECK(d["only_second"] == g.alphabet().format(*c.only_second));
}

TEST_CASE("classify, transform and validate are thin adapters") {
    Game g = fixture("g1-recursive");
    json only = json::parse(run({"--json", "classify", "fixture:g1-recursive"}).out);
    CHECK(only["prefix_free"] == true);
    CHECK(only.contains("verdict"));
    json c = run({"classify", "fixture:g1-recursive"}).details();
    CHECK(c == classification_json(classify(g), g.alphabet()));

    auto t = run({"transform", "--prefix-free", "--end-symbol", "#", "fixture:g1-recursive"});
    CHECK(t.code == 0);
    CHECK(json::parse(t.out) == game_to_json(to_prefix_free(g, "#")));

    auto v = run({"validate", "fixture:g1-recursive", "--strategy", "fixture:always-call"});
    CHECK(v.code == 0);
    CHECK(v.details()["target_states"] == g.target().num_states());
}

TEST_CASE("synthesize output is the library strategy") {
    Game g = fixture("sandbox");
    auto r = run({"synthesize", "fixture:sandbox"});
    CHECK(r.code == 0);
    auto lib = synthesize_weakly_dominant(g);
    CHECK(r.details()["strategy"] == strategy_to_json(lib.strategy, g));
    CHECK(r.details()["triples"] == lib.effects.size());
}

TEST_CASE("synthesize refuses non-prefix-free games with a pointer to the transform") {
    fs::path dir = scratch("synth");
    Alphabet ab({"a", "b"});
    Game g(ab, {{0, parse_regex("b+bb", ab)}}, regex_to_dfa(parse_regex("bb", ab), 2));
    write(dir / "g.json", game_to_json(g));
    auto r = run({"synthesize", (dir / "g.json").string()});
    CHECK(r.code == 3);
    json e = json::parse(r.err);
    CHECK(e["error"]["type"] == "scope");
    CHECK(e["error"]["message"].get<std::string>().find("transform --prefix-free") != std::string::npos);
}

TEST_CASE("losing-nfa and online-prune are thin adapters") {
    Game g = fixture("sandbox");
    auto st = fixture_strategies("sandbox", g);
    auto l = run({"losing-nfa", "fixture:sandbox", "fixture:read-all"});
    CHECK(l.code == 0);
    CHECK(l.details()["nfa"] == nfa_to_json(losing_nfa(g, st.at("read-all")), g.alphabet()));

    fs::path dir = scratch("online");
    OnlineInstance inst = random_online_instance(4, 2, 0.5, 11);
    write(dir / "nfa.json", online_instance_to_json(inst));
    auto p = run({"online-prune", (dir / "nfa.json").string(), "--diagnose-bounded", "3", "--dot",
                  (dir / "p.dot").string()});
    CHECK(p.code == 0);
    PruneResult lib = prune_weakly_dominant(inst);
    json d = p.details();
    CHECK(d["pruned"] == online_instance_to_json(OnlineInstance{inst.alphabet, lib.pruned}));
    CHECK(d["strategy"] == dfa_to_json(lib.strategy, inst.alphabet));
    CHECK(d["diagnosis"]["agrees"] == true);
    CHECK(fs::exists(dir / "p.dot"));
}

TEST_CASE("exists-winning adapter, budget and interrupt") {
    Game g = fixture("g1c-undominated");
    Word w = g.alphabet().parse("a");
    auto r = run({"exists-winning", "fixture:g1c-undominated", "a", "--mode", "exhaustive"});
    SearchOptions opt;
    opt.mode = SearchMode::Exhaustive;
    CHECK((r.code == 0) == exists_winning_sreg(g, w, opt).spec.has_value());

    auto b = run({"--budget", "1", "exists-winning", "fixture:g1c-undominated", "a"});
    CHECK(b.code == 3);
    CHECK(json::parse(b.err)["error"]["type"] == "budget");

    auto s = run({"exists-winning", "fixture:g1c-undominated", "a"}, "", [] { return true; });
    CHECK(s.code == 3);
    CHECK(s.details()["incomplete"] == true);
}

TEST_CASE("generators write loadable instances") {
    fs::path dir = scratch("gen");
    auto s = run({"generate", "3sat", "--clauses", "1,2,2;-1,-2,-2", "--out", (dir / "sat").string()});
    CHECK(s.code == 0);
    Game sg = load_game((dir / "sat" / "game.json").string());
    SatInstance lib = from_3sat(parse_cnf("1,2,2;-1,-2,-2"));
    CHECK(game_to_json(sg) == game_to_json(lib.game));
    auto e = run({"exists-winning", (dir / "sat" / "game.json").string(), s.details()["word"].get<std::string>()});
    CHECK(e.code == 0);

    Nfa n = random_nfa(2, 2, 0.6, 5);
    write(dir / "n.json", nfa_to_json(n, Alphabet({"0", "1"})));
    auto u = run({"generate", "universality", "--nfa", (dir / "n.json").string(), "--out", (dir / "u").string()});
    CHECK(u.code == 0);
    std::string gu = (dir / "u" / "game.json").string();
    auto c = run({"compare", gu, (dir / "u" / "first.json").string(), (dir / "u" / "second.json").string()});
    CHECK((c.code == 0) == brute_force_universal(n));

    auto g1 = run({"--seed", "9", "generate", "random", "--params", "alphabet=2,states=3"});
    auto g2 = run({"generate", "random", "--params", "alphabet=2,states=3", "--seed", "9"});
    CHECK(g1.code == 0);
    CHECK(g1.out == g2.out);
    CHECK(json::parse(g1.out) == game_to_json(random_game(parse_random_params("alphabet=2,states=3"), 9)));
}

TEST_CASE("interactive play re-prompts invalid replies") {
    auto r = run({"play", "fixture:sandbox", "--strategy", "fixture:call-initial-a", "--interactive"}, "ac\nc\nb\n");
    CHECK(r.code == 0);
    CHECK(r.out.find("not in the rule of a") != std::string::npos);
    CHECK(r.out.find("remaining: ac") != std::string::npos);
    CHECK(r.out.find("^a b c | ε") != std::string::npos);
    auto eof = run({"play", "fixture:sandbox", "--strategy", "fixture:call-initial-a", "--interactive"}, "ac\nc\n");
    CHECK(eof.code == 2);
}

TEST_CASE("play with scripted replies and shortest replies") {
    auto r = run({"play", "fixture:sandbox", "--strategy", "fixture:read-all", "--word", "ab"});
    CHECK(r.code == 0);
    CHECK(r.details()["final_string"] == "ab");
    auto bad = run({"play", "fixture:sandbox", "--strategy", "fixture:call-initial-a", "--word", "ac", "--replies", "c"});
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.err)["error"]["type"] == "protocol");
}

TEST_CASE("usage and input errors exit 2 with an error object") {
    for (auto args : std::vector<std::vector<std::string>>{
             {}, {"nonsense"}, {"is-winning", "missing.json", "s", "a"}, {"is-winning", "fixture:nope", "s", "a"},
             {"is-winning", "fixture:sandbox", "fixture:read-all", "zz"}}) {
        auto r = run(args);
        CHECK(r.code == 2);
        CHECK(json::parse(r.err).contains("error"));
    }
}

TEST_CASE("exit codes and output are deterministic") {
    std::vector<std::string> args{"--json", "synthesize", "fixture:g1c-undominated"};
    auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    auto q = run({"--quiet", "is-winning", "fixture:g2c-undominated", "fixture:fixture", "cb"});
    CHECK(q.code == 1);
    CHECK(q.out.empty());
}
