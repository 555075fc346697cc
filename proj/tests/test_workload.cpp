#include "doctest.h"

#include <set>
#include <string>

#include "workload.hpp"

using namespace wl;

TEST_CASE("parse handles every op, comments, and blank lines") {
    const std::string text =
        "# header comment\n"
        "insert -5\n"
        "insert 7   # trailing comment\n"
        "select 2\n"
        "rank -5\n"
        "contains 7\n"
        "succ 0\n"
        "pred 0\n"
        "min\n"
        "max\n"
        "pop_min\n"
        "pop_max\n"
        "\n"
        "delete @0\n"
        "change_key @1 99\n"
        "split 1\n"
        "merge 1 2\n"
        "use 1\n";
    Script s = parse(text);
    REQUIRE(s.ops.size() == 16);
    CHECK(s.ops[0].kind == OpKind::Insert);
    CHECK(s.ops[0].key == -5);
    CHECK(s.ops[0].line == 2);
    CHECK(s.ops[2].kind == OpKind::Select);
    CHECK(s.ops[2].rank == 2);
    CHECK(s.ops[11].kind == OpKind::Delete);
    CHECK(s.ops[11].idx == 0);
    CHECK(s.ops[12].kind == OpKind::ChangeKey);
    CHECK(s.ops[12].idx == 1);
    CHECK(s.ops[12].key == 99);
    CHECK(s.ops[14].kind == OpKind::Merge);
    CHECK(s.ops[14].a == 1);
    CHECK(s.ops[14].b == 2);
}

TEST_CASE("parse -> to_text -> parse is a fixed point") {
    const std::string text =
        "insert 3\ninsert -4\nselect 1\nchange_key @0 10\nsplit 1\nmerge 1 2\nuse 0\npop_max\n";
    Script s = parse(text);
    CHECK(to_text(s) == text);
    Script s2 = parse(to_text(s));
    REQUIRE(s2.ops.size() == s.ops.size());
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        CHECK(s2.ops[i].kind == s.ops[i].kind);
        CHECK(s2.ops[i].key == s.ops[i].key);
        CHECK(s2.ops[i].rank == s.ops[i].rank);
        CHECK(s2.ops[i].idx == s.ops[i].idx);
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ScriptError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("insert 1\nfrobnicate 2\n") == 2);
    CHECK(line_of("insert\n") == 1);
    CHECK(line_of("select x\n") == 1);
    CHECK(line_of("delete 3\n") == 1);     // missing '@'
    CHECK(line_of("insert 1 2\n") == 1);   // extra argument
    CHECK(line_of("select -1\n") == 1);    // ranks are unsigned
}

TEST_CASE("parse_params splits K=V pairs") {
    Params p = parse_params("n=100,q=5,ranks=1:2:3");
    CHECK(p.at("n") == "100");
    CHECK(p.at("q") == "5");
    CHECK(p.at("ranks") == "1:2:3");
    CHECK(parse_params("").empty());
    CHECK_THROWS(parse_params("oops"));
}

TEST_CASE("generate is deterministic per seed and differs across seeds") {
    Params p = parse_params("n=200,q=16");
    Script a = generate("uniform", p, 42);
    Script b = generate("uniform", p, 42);
    Script c = generate("uniform", p, 43);
    CHECK(to_text(a) == to_text(b));
    CHECK(to_text(a) != to_text(c));
}

TEST_CASE("generated scenarios have the advertised composition") {
    auto count = [](const Script& s, OpKind k) {
        std::size_t c = 0;
        for (const auto& op : s.ops)
            if (op.kind == k) ++c;
        return c;
    };

    Script u = generate("uniform", parse_params("n=200,q=16"), 1);
    CHECK(count(u, OpKind::Insert) == 200);
    CHECK(count(u, OpKind::Select) == 16);

    Script inc = generate("incsort", parse_params("n=500,q=50"), 1);
    CHECK(count(inc, OpKind::Insert) == 500);
    CHECK(count(inc, OpKind::PopMin) == 50);

    Script ms = generate("multiselect", parse_params("n=100,ranks=10:20:30"), 1);
    CHECK(count(ms, OpKind::Insert) == 100);
    CHECK(count(ms, OpKind::Select) == 3);

    Script sr = generate("splitrank", parse_params("n=100,splits=4"), 1);
    CHECK(count(sr, OpKind::Split) == 4);

    CHECK_THROWS(generate("nonsense", {}, 1));
    CHECK_THROWS(generate("uniform", parse_params("n=bogus"), 1));
}

TEST_CASE("runner: empty script gives an empty report") {
    RunOptions opt;
    RunReport r = run(Script{}, opt);
    CHECK(r.ops_executed == 0);
    CHECK(r.total_comparisons == 0);
    CHECK(r.final_n == 0);
    CHECK(r.mismatches == 0);
    REQUIRE(r.rows.size() == 1); // the initial tree always reports
    CHECK(r.rows[0].n == 0);
    CHECK(r.rows[0].comparisons == 0);
}

TEST_CASE("runner: verify mode agrees with the reference on a scripted session") {
    const std::string text =
        "insert 5\ninsert 3\ninsert 8\ninsert 1\n"
        "select 2\nrank 5\ncontains 8\nsucc 3\npred 5\nmin\nmax\n"
        "change_key @1 100\nmax\ndelete @0\nmin\npop_min\npop_max\n";
    RunOptions opt;
    opt.verify = true;
    opt.check_invariants = true;
    RunReport r = run(parse(text), opt);
    CHECK(r.mismatches == 0);
    CHECK(r.op_errors == 0);
    CHECK(r.invariant_failure.empty());
    CHECK(r.final_n == 1);
}

TEST_CASE("runner: split assigns fresh ids, merge reunites, use switches") {
    const std::string text =
        "insert 10\ninsert 20\ninsert 30\ninsert 40\n"
        "split 2\n"   // -> trees 1 (ranks 1-2) and 2 (ranks 3-4)
        "max\n"       // on tree 1: 20
        "use 2\n"
        "min\n"       // on tree 2: 30
        "merge 1 2\n"
        "use 1\n"
        "select 4\n"; // 40 again
    RunOptions opt;
    opt.verify = true;
    opt.collect_answers = true;
    RunReport r = run(parse(text), opt);
    CHECK(r.mismatches == 0);
    CHECK(r.op_errors == 0);
    CHECK(r.final_n == 4);
    CHECK(r.rows.size() == 1); // one live tree at the end
    REQUIRE(r.answers.size() == 3);
    CHECK(r.answers[0] == 20);
    CHECK(r.answers[1] == 30);
    CHECK(r.answers[2] == 40);
}

TEST_CASE("runner: stale and out-of-range references are counted, not fatal") {
    // @0 exists, deleting twice makes the second a reported op error; rank-9
    // select on 2 elements likewise
    const std::string text = "insert 1\ninsert 2\ndelete @0\ndelete @0\nselect 9\n";
    RunOptions opt;
    opt.verify = true;
    RunReport r = run(parse(text), opt);
    CHECK(r.mismatches == 0);
    CHECK(r.op_errors == 2);
    CHECK(r.final_n == 1);
}

TEST_CASE("runner: references that cannot be resolved at all are script errors") {
    RunOptions opt;
    CHECK_THROWS_AS(run(parse("delete @7\n"), opt), ScriptError);   // never inserted
    CHECK_THROWS_AS(run(parse("use 9\n"), opt), ScriptError);       // unknown tree id
    CHECK_THROWS_AS(run(parse("merge 0 9\n"), opt), ScriptError);
}

TEST_CASE("summarize emits the key=value block") {
    RunOptions opt;
    RunReport r = run(parse("insert 4\ninsert 2\nmin\n"), opt);
    std::string s = summarize(r);
    CHECK(s.find("ops=3\n") != std::string::npos);
    CHECK(s.find("n=2\n") != std::string::npos);
    CHECK(s.find("queries=1\n") != std::string::npos);
    CHECK(s.find("mismatches=0\n") != std::string::npos);
}
