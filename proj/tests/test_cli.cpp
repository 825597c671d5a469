#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <hompres/formula.hpp>
#include <hompres/graph.hpp>
#include <hompres/structure.hpp>
#include <hompres/subiso.hpp>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = (env.empty() ? std::string() : env + " ") + "\"" + CLI_PATH + "\" " + args +
                      " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string slurp_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("graph parameter commands") {
    RunResult td = run_cli("treedepth " + fx("p7.graph"));
    CHECK(td.code == 0);
    CHECK(contains(td.out, "tree-depth: 3"));

    RunResult tw = run_cli("treewidth " + fx("c4.graph"));
    CHECK(tw.code == 0);
    CHECK(contains(tw.out, "tree-width: 2"));

    RunResult lp = run_cli("longestpath " + fx("p7.graph"));
    CHECK(lp.code == 0);
    CHECK(contains(lp.out, "longest path: 7 vertices"));

    RunResult yes = run_cli("minor " + fx("k3.graph") + " " + fx("c4.graph"));
    CHECK(yes.code == 0);
    CHECK(contains(yes.out, "minor: yes"));
    RunResult no = run_cli("minor " + fx("c4.graph") + " " + fx("k3.graph"));
    CHECK(no.code == 0);
    CHECK(contains(no.out, "minor: no"));

    RunResult tri = run_cli("trichotomy " + fx("p3.graph") + " --ell 2");
    CHECK(tri.code == 0);
    CHECK(contains(tri.out, "holds: btree_minor"));
}

TEST_CASE("json reports are deterministic") {
    RunResult a = run_cli("treedepth --json " + fx("p7.graph"));
    RunResult b = run_cli("treedepth " + fx("p7.graph") + " --json");
    CHECK(a.code == 0);
    CHECK(contains(a.out, "\"depth\": 3"));
    CHECK(contains(a.out, "\"command\": \"treedepth\""));
    CHECK(contains(a.out, "fnv1a:"));
    CHECK(a.out == b.out);
    RunResult c = run_cli("treedepth --json " + fx("p7.graph"));
    CHECK(a.out == c.out);
}

TEST_CASE("structure and core commands") {
    RunResult s = run_cli("structure " + fx("k3.struct"));
    CHECK(s.code == 0);
    CHECK(contains(s.out, "universe size: 3"));
    CHECK(contains(s.out, "total tuples: 6"));

    RunResult core = run_cli("core " + fx("k3.struct"));
    CHECK(core.code == 0);
    CHECK(contains(core.out, "core size: 3 (input 3)"));

    RunResult mc = run_cli("mincores " + fx("k3.struct") + " " + fx("c3.struct"));
    CHECK(mc.code == 0);
    CHECK(contains(mc.out, "1 minimal core(s)"));
    CHECK(contains(mc.out, "size 3, tree-depth 3"));
}

TEST_CASE("formula commands") {
    RunResult f = run_cli("formula " + fx("triangle.fo"));
    CHECK(f.code == 0);
    CHECK(contains(f.out, "quantifier rank: 3"));
    CHECK(contains(f.out, "existential-positive: yes"));

    RunResult t = run_cli("eval --formula " + fx("taut.fo") + " --structure " + fx("k3.struct"));
    CHECK(t.code == 0);
    CHECK(contains(t.out, "true"));
    RunResult n = run_cli("eval --formula " + fx("noedge.fo") + " --structure " + fx("k3.struct"));
    CHECK(n.code == 0);
    CHECK(contains(n.out, "false"));

    RunResult ok = run_cli("check-preserved --formula " + fx("edge.fo") + " --max-size 2");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "hom-preserved up to size 2"));
    RunResult bad = run_cli("check-preserved --formula " + fx("noedge.fo") + " --max-size 2");
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "NOT preserved"));

    RunResult c = run_cli("compile --formula " + fx("triangle.fo") + " --n 2 --json");
    CHECK(c.code == 0);
    CHECK(contains(c.out, "\"depth\": 4"));
    RunResult ch = run_cli("compile --formula " + fx("edge.fo") + " --n 2");
    CHECK(ch.code == 0);
    CHECK(contains(ch.out, "inputs: 4"));
}

TEST_CASE("sub solve") {
    std::string base = "sub solve --graph " + fx("p3.graph") + " --n 2 --instance ";
    for (const char* solver : {"brute", "dp", "formula"}) {
        RunResult yes = run_cli(base + fx("p3n2-yes.bits") + " --solver " + solver);
        CHECK(yes.code == 0);
        CHECK(contains(yes.out, "found: yes"));
        RunResult no = run_cli(base + fx("p3n2-no.bits") + " --solver " + solver);
        CHECK(no.code == 0);
        CHECK(contains(no.out, "found: no"));
    }
    RunResult w = run_cli(base + fx("p3n2-yes.bits"));
    CHECK(contains(w.out, "witness alpha: 0 0 0"));
}

TEST_CASE("reductions") {
    RunResult del = run_cli("sub reduce-minor --graph " + fx("p3.graph") +
                            " --n 2 --op delete --u 1 --v 2 --verify");
    CHECK(del.code == 0);
    CHECK(contains(del.out, "operation: delete 1 2"));
    CHECK(contains(del.out, "verified: identity holds"));

    RunResult con = run_cli("sub reduce-minor --graph " + fx("k3.graph") +
                            " --n 2 --op contract --u 0 --v 1 --verify");
    CHECK(con.code == 0);
    CHECK(contains(con.out, "verified: identity holds"));

    RunResult path = run_cli("sub reduce-path --graph " + fx("k3.graph") + " --n 2 --verify");
    CHECK(path.code == 0);
    CHECK(contains(path.out, "path length k = 3"));
    CHECK(contains(path.out, "verified: identity holds"));

    RunResult hpt = run_cli("sub hpt-reduce --structure " + fx("k3.struct") + " --n 2 --formula " +
                            fx("triangle.fo"));
    CHECK(hpt.code == 0);
    CHECK(contains(hpt.out, "equivalence sweep: ok"));
}

TEST_CASE("pipeline") {
    RunResult good = run_cli("hpt pipeline --formula " + fx("triangle.fo"));
    CHECK(good.code == 0);
    CHECK(contains(good.out, "hom-preserved up to size 3"));
    CHECK(contains(good.out, "psi quantifier rank: 3"));
    CHECK(contains(good.out, "equivalent on all structures up to size 3"));

    RunResult bad = run_cli("hpt pipeline --formula " + fx("noedge.fo"));
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "NOT hom-preserved"));
}

TEST_CASE("error exits") {
    CHECK(run_cli("treedepth " + fx("does-not-exist.graph")).code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("sub solve --graph " + fx("p3.graph") + " --n 2 --instance " +
                  fx("p3n2-yes.bits") + " --solver bogus")
              .code == 2);
    CHECK(run_cli("eval --formula " + fx("p3.graph") + " --structure " + fx("k3.struct")).code ==
          2);
    CHECK(run_cli("").code == 2);  // a subcommand is required
}

TEST_CASE("bit budget from the environment") {
    std::string check = "check-preserved --formula " + fx("edge.fo") + " --max-size 2";
    RunResult capped = run_cli(check, "HOMPRES_MAX_BITS=3");
    CHECK(capped.code == 2);
    CHECK(contains(capped.out, "bound exceeded"));
    RunResult overridden = run_cli("--max-bits 20 " + check, "HOMPRES_MAX_BITS=3");
    CHECK(overridden.code == 0);
}

TEST_CASE("every fixture parses and round-trips") {
    using hompres::parse_formula_file;
    using hompres::parse_graph;
    using hompres::parse_structure;
    using hompres::parse_sub_instance;

    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(FIXTURES_DIR)) {
        const auto path = entry.path();
        const std::string ext = path.extension().string();
        const std::string text = slurp_file(path);
        if (ext == ".graph") {
            auto g = parse_graph(text);
            CHECK(parse_graph(serialize_graph(g)) == g);
        } else if (ext == ".struct") {
            auto s = parse_structure(text);
            CHECK(parse_structure(serialize_structure(s)) == s);
        } else if (ext == ".fo") {
            auto f = parse_formula_file(text);
            CHECK(parse_formula_file(render(f.formula)).formula == f.formula);
        } else if (ext == ".bits") {
            auto x = parse_sub_instance(hompres::family(hompres::GraphFamily::path, 3), 2, text);
            CHECK(parse_sub_instance(x.blowup.base, 2, serialize_sub_instance(x)).present ==
                  x.present);
        } else {
            continue;
        }
        ++seen;
    }
    CHECK(seen == 13);
}
